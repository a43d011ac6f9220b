#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mate4/builtin_curves.hpp"
#include "mate4/error.hpp"
#include "mate4/framed.hpp"
#include "mate4/frenet.hpp"

using namespace mate4;

namespace {

const double kPi = std::numbers::pi;
const double kS5 = std::sqrt(5.0);

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no mate4::Error thrown";
  return ErrorCode::InvalidInput;
}

void expect_vec(const Vec4& a, const Vec4& b, double tol) {
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

FramedCurvature example38_expected(double t) {
  return {0.0, -2 / kS5, -1 / kS5, 2 / kS5, -4 / kS5, 0.0, kS5 * t};
}

}  // namespace

TEST(CheckFramed, Example38Passes) {
  const auto pts = framed_points(example38::framed(), Grid::spanning(0.0, 2 * kPi, 629));
  const auto r = check_framed(pts, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.tangency_sup, 1e-12);
  EXPECT_LT(r.frame_sup, 1e-12);
}

TEST(CheckFramed, FrenetNormalsPass) {
  const auto c = torus::curve(1.0, std::sqrt(3.0));
  std::vector<FramedCurvePoint> pts;
  for (int i = 0; i < 50; ++i) {
    const auto j = taylor_jet(c, 0.1 * i);
    const auto f = frenet_arclength(j);
    FramedCurvePoint p;
    p.t = 0.1 * i;
    p.gamma = j.d[0];
    p.dgamma = j.d[1];
    p.frame = MovingFrame::from_vectors(f.n1, f.n2, f.n3);
    pts.push_back(p);
  }
  EXPECT_TRUE(check_framed(pts, 1e-9).pass);
}

TEST(CheckFramed, PerturbedNu2Fails) {
  auto pts = framed_points(example38::framed(), Grid::spanning(0.0, 2 * kPi, 100));
  double direct = 0.0;
  for (auto& p : pts) {
    p.frame.triple.nu2 += 0.01 * basis(0);
    const Vec4& v = p.frame.triple.nu2;
    direct = std::max({direct, std::abs(dot(v, p.frame.triple.nu1)), std::abs(dot(v, p.frame.triple.nu3)),
                       std::abs(dot(v, p.frame.mu)), std::abs(dot(v, v) - 1.0), std::abs(dot(p.dgamma, v))});
  }
  const auto r = check_framed(pts, 1e-9);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(direct, 5e-3);
  EXPECT_NEAR(std::max(r.tangency_sup, r.frame_sup), direct, 0.5 * direct);
}

TEST(FramedCurvature, Example38Analytic) {
  for (double t : {0.0, 0.5, 1.0, 3.7, 6.0}) {
    const auto k = framed_curvature(framed_point(example38::framed(), t));
    EXPECT_LT(max_abs_diff(k, example38_expected(t)), 1e-12) << "t=" << t;
  }
  EXPECT_EQ(framed_curvature(framed_point(example38::framed(), 0.0)).alpha, 0.0);
}

TEST(FramedCurvature, Example38FiniteDifference) {
  const Grid g = Grid::spanning(0.0, 2 * kPi, 629);
  const auto k = framed_curvature(differentiate_nodes(framed_nodes(example38::framed(), g)));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.count; ++i) worst = std::max(worst, max_abs_diff(k[i], example38_expected(g.at(i))));
  EXPECT_LT(worst, 1e-5);
}

TEST(FramedCurvature, TorusAsFramedCurve) {
  const double a = 1.0, b = std::sqrt(3.0);
  const FramedCurvature expected{1 / std::sqrt(2.0), 0.0, std::sqrt(2.0), -std::sqrt(6.0) / 2, 0.0, 0.0, -1.0};
  for (double s : {0.0, 1.1, 2.9}) {
    EXPECT_LT(max_abs_diff(framed_curvature(framed_point(torus::framed(a, b), s)), expected), 1e-12);
  }
  EXPECT_LT(max_abs_diff(torus::curvature(a, b), expected), 1e-15);
  // General closed form for other a, b.
  const double a2 = 2.0, b2 = 0.5, r = std::sqrt(a2 * a2 + b2 * b2);
  const FramedCurvature general{(-a2 * a2 + b2 * b2) / std::sqrt(2 * r * r), 0.0, r / std::sqrt(2.0),
                                -std::sqrt(2.0) * a2 * b2 / r, 0.0, 0.0, -1.0};
  EXPECT_LT(max_abs_diff(framed_curvature(framed_point(torus::framed(a2, b2), 0.7)), general), 1e-12);
}

TEST(FramedCurvature, StructureEquationsHold) {
  for (double t : {0.3, 2.0}) {
    const auto p = framed_point(example38::framed(), t);
    EXPECT_LT(structure_residual(p, framed_curvature(p)), 1e-12);
  }
}

TEST(Grid, NonUniformNodesRejected) {
  auto nodes = framed_nodes(example38::framed(), Grid::spanning(0.0, 1.0, 20));
  nodes[7].t += 1e-3;
  EXPECT_EQ(code_of([&] { differentiate_nodes(nodes); }), ErrorCode::GridMismatch);
}

TEST(Rotation, Examples) {
  const Mat3 id = rotation_matrix({0, 0, 0});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(id[i][j], i == j ? 1.0 : 0.0, 1e-15);
  }
  // Literal matrix at (phi, psi, theta) = (0, pi/2, 0): rows (0,-1,0), (1,0,0), (0,0,1).
  const MovingFrame e = MovingFrame::from_vectors(basis(0), basis(1), basis(2));
  const MovingFrame r = rotate_frame(e, {0.0, kPi / 2, 0.0});
  expect_vec(r.nu(1), -basis(1), 1e-15);
  expect_vec(r.nu(2), basis(0), 1e-15);
  expect_vec(r.nu(3), basis(2), 1e-15);
}

TEST(Rotation, SpecialOrthogonalAndKeepsMu) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const auto base = framed_point(example38::framed(), 1.3).frame;
  for (int k = 0; k < 100; ++k) {
    const EulerAngles a{u(rng), u(rng), u(rng)};
    const Mat3 m = rotation_matrix(a);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) s += m[i][l] * m[j][l];
        EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-14);
      }
    }
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_NEAR(det, 1.0, 1e-14);
    const auto r = rotate_frame(base, a);
    expect_vec(r.mu, base.mu, 1e-12);
    expect_vec(triple_product(r.nu(1), r.nu(2), r.nu(3)), base.mu, 1e-12);
  }
}

TEST(TransformedCurvature, ZeroAnglesAndRates) {
  const auto k = example38_expected(0.8);
  EXPECT_LT(max_abs_diff(transformed_curvature(k, {}, {}), k), 1e-15);
}

TEST(TransformedCurvature, CancelsL1) {
  FramedCurvature k{0.7, 0.0, 0.3, 0.0, -0.2, 0.5, 1.0};
  const auto r = transformed_curvature(k, {0.0, 0.4, 0.0}, {0.0, k.l1, 0.0});
  EXPECT_NEAR(r.l1, 0.0, 1e-15);
}

TEST(TransformedCurvature, MatchesRotatedFrame) {
  // Angles (0.3, 0.7 t, 1.1); the oracle differentiates the rotated frame numerically.
  const Grid g = Grid::spanning(0.0, 2 * kPi, 2001);
  auto nodes = framed_nodes(example38::framed(), g);
  for (auto& n : nodes) n.frame = rotate_frame(n.frame, {0.3, 0.7 * n.t, 1.1});
  const auto fd = framed_curvature(differentiate_nodes(nodes));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.count; ++i) {
    const double t = g.at(i);
    const auto k = transformed_curvature(example38::curvature(t), {0.3, 0.7 * t, 1.1}, {0.0, 0.7, 0.0});
    worst = std::max(worst, max_abs_diff(k, fd[i]));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(CurvatureSpec, TableInterpolation) {
  std::vector<FramedCurvature> tab;
  for (int i = 0; i <= 100; ++i) tab.push_back(example38::curvature(0.01 * i));
  const auto spec = CurvatureSpec::from_table(0.0, 0.01, tab);
  EXPECT_LT(max_abs_diff(spec(0.4567), example38::curvature(0.4567)), 1e-12);
  EXPECT_EQ(code_of([&] { spec(1.5); }), ErrorCode::OutOfDomain);
}

TEST(AdaptedFrame, AlreadyAdaptedKeepsAngles) {
  const FramedCurvature k{0.0, 0.0, 0.4, 0.0, -0.3, 0.2, 1.0};
  const auto spec = CurvatureSpec::from_function([k](double) { return k; }, 0.0, 1.0);
  const auto ad = adapted_frame(spec, Grid::spanning(0.0, 1.0, 101));
  for (std::size_t i = 0; i < ad.t.size(); ++i) {
    EXPECT_NEAR(ad.angles[i].phi, 0.0, 1e-15);
    EXPECT_NEAR(ad.angles[i].psi, 0.0, 1e-15);
    EXPECT_NEAR(ad.angles[i].theta, kPi / 2, 1e-15);
    // theta = pi/2 swaps nu2 and nu3 up to sign, so l5, l6 move; the rest is kept.
    const auto& c = ad.curvature[i];
    EXPECT_LT(max_abs_diff(c, transformed_curvature(k, ad.angles[i], {})), 1e-14);
    EXPECT_NEAR(c.l1, 0.0, 1e-15);
    EXPECT_NEAR(c.l2, 0.0, 1e-15);
    EXPECT_NEAR(c.l4, 0.0, 1e-15);
    EXPECT_NEAR(c.l3, k.l3, 1e-15);
    EXPECT_NEAR(c.alpha, k.alpha, 1e-15);
    EXPECT_NEAR(c.l5, -k.l6, 1e-15);
    EXPECT_NEAR(c.l6, k.l5, 1e-15);
  }
}

TEST(AdaptedFrame, ThetaZeroIsDegenerate) {
  const auto spec = CurvatureSpec::from_function(example38::curvature, 0.1, 2.0);
  EXPECT_EQ(code_of([&] { adapted_frame(spec, Grid::spanning(0.1, 2.0, 101), {0.0, 0.0, 0.0}); }),
            ErrorCode::ThetaDegenerate);
}

TEST(AdaptedFrame, Example38KillsL1L2L4) {
  const Grid g = Grid::spanning(0.1, 2.0, 1901);
  const auto ad = adapted_frame(CurvatureSpec::from_function(example38::curvature, 0.1, 2.0), g);
  double ode = 0.0;
  for (const auto& k : ad.curvature) ode = std::max({ode, std::abs(k.l1), std::abs(k.l2), std::abs(k.l4)});
  EXPECT_LT(ode, 1e-12);
  auto nodes = framed_nodes(example38::framed(), g);
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].frame = rotate_frame(nodes[i].frame, ad.angles[i]);
  double fd = 0.0;
  for (const auto& k : framed_curvature(differentiate_nodes(nodes))) {
    fd = std::max({fd, std::abs(k.l1), std::abs(k.l2), std::abs(k.l4)});
  }
  EXPECT_LT(fd, 1e-6);
}
