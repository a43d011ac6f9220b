#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mate4/builtin_curves.hpp"
#include "mate4/error.hpp"
#include "mate4/reconstruct.hpp"

using namespace mate4;

namespace {

const double kPi = std::numbers::pi;

std::vector<FramedNode> reconstruct_example38(double step, double t1) {
  const auto p0 = framed_point(example38::framed(), 0.0);
  const auto spec = CurvatureSpec::from_function(example38::curvature, 0.0, t1);
  return integrate_framed(spec, p0.gamma, p0.frame, 0.0, t1, {step, 10});
}

double gamma_error(const std::vector<FramedNode>& nodes) {
  double e = 0.0;
  for (const auto& n : nodes) e = std::max(e, max_abs(n.gamma - framed_point(example38::framed(), n.t).gamma));
  return e;
}

Mat4 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = n(rng);
  }
  Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix4d>(m).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  Mat4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = q(i, j);
  }
  return r;
}

}  // namespace

TEST(Integrate, StraightLine) {
  const auto spec = CurvatureSpec::from_function([](double) { return FramedCurvature{0, 0, 0, 0, 0, 0, 1}; }, 0.0, 2.0);
  const auto e = MovingFrame::from_vectors(basis(0), basis(1), basis(2));
  const auto nodes = integrate_framed(spec, Vec4{}, e, 0.0, 2.0, {0.01, 10});
  ASSERT_EQ(nodes.size(), 201u);
  // mu0 = e1 x e2 x e3 = -e4, so the line runs along -e4.
  for (const auto& n : nodes) {
    EXPECT_LT(max_abs(n.gamma + n.t * basis(3)), 1e-13);
    EXPECT_LT(max_abs(n.frame.mu + basis(3)), 1e-15);
    EXPECT_LT(max_abs(n.frame.nu(1) - basis(0)), 1e-15);
  }
}

TEST(Integrate, Example38AndConvergenceOrder) {
  const auto fine = reconstruct_example38(1e-3, 2 * kPi);
  const double e1 = gamma_error(fine);
  EXPECT_LT(e1, 1e-6);
  const double e2 = gamma_error(reconstruct_example38(5e-4, 2 * kPi));
  EXPECT_GE(e1 / e2, 8.0);
  EXPECT_LE(e1 / e2, 32.0);
  for (const auto& n : fine) EXPECT_LT(frame_defect(n.frame), 1e-10);
}

TEST(Integrate, RejectsBadInitialFrame) {
  const auto spec = CurvatureSpec::from_function(example38::curvature, 0.0, 1.0);
  MovingFrame f = MovingFrame::from_vectors(basis(0), basis(1), basis(2));
  f.triple.nu2 += 1e-3 * basis(0);
  try {
    integrate_framed(spec, Vec4{}, f, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInitialFrame);
  }
}

TEST(Mat4, DeterminantMatchesEigen) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    Mat4 a;
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m(i, j) = a.m[i][j] = n(rng);
    }
    EXPECT_NEAR(a.det(), m.determinant(), 1e-12);
  }
}

TEST(Congruence, IdenticalCurves) {
  const auto nodes = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 201));
  const auto r = congruence_check(nodes, nodes, 1e-8);
  ASSERT_TRUE(r.has_value());
  const Mat4 id = Mat4::identity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(r->rotation.m[i][j], id.m[i][j], 1e-14);
  }
  EXPECT_LT(max_abs(r->translation), 1e-14);
  EXPECT_LT(r->residual, 1e-14);
}

TEST(Congruence, RecoversRandomRigidMotion) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> n;
  const auto fc1 = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 201));
  for (int k = 0; k < 5; ++k) {
    const Mat4 rot = random_rotation(rng);
    const Vec4 v{n(rng), n(rng), n(rng), n(rng)};
    std::vector<FramedNode> fc2;
    for (const auto& x : fc1) fc2.push_back(transform_node(x, rot, v));
    const auto r = congruence_check(fc1, fc2, 1e-6);
    ASSERT_TRUE(r.has_value());
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(r->rotation.m[i][j], rot.m[i][j], 1e-8);
    }
    EXPECT_LT(max_abs(r->translation - v), 1e-8);
  }
}

TEST(Congruence, DifferentCurvatureIsRejected) {
  const double t1 = 2.0;
  const auto truth = framed_nodes(example38::framed(), Grid::spanning(0.0, t1, 2001));
  const auto p0 = framed_point(example38::framed(), 0.0);
  const auto shifted = CurvatureSpec::from_function(
      [](double t) {
        auto k = example38::curvature(t);
        k.alpha += 0.1;
        return k;
      },
      0.0, t1);
  const auto other = integrate_framed(shifted, p0.gamma, p0.frame, 0.0, t1, {1e-3, 10});
  ASSERT_EQ(other.size(), truth.size());
  EXPECT_FALSE(congruence_check(other, truth, 1e-3).has_value());
}

TEST(Congruence, ReflectionIsRejected) {
  const auto fc1 = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 201));
  Mat4 flip = Mat4::identity();
  flip.m[3][3] = -1.0;
  std::vector<FramedNode> fc2;
  for (const auto& x : fc1) fc2.push_back(transform_node(x, flip, Vec4{}));
  EXPECT_FALSE(congruence_check(fc1, fc2, 1e-6).has_value());
}

TEST(Congruence, GridMismatch) {
  const auto a = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 201));
  const auto b = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 101));
  try {
    congruence_check(a, b, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(ExtractCurvature, RoundTrip) {
  const auto nodes = framed_nodes(example38::framed(), Grid::spanning(0.0, 2.0, 2001));
  const auto spec = extract_curvature(nodes);
  for (double t : {0.25, 1.0, 1.75}) EXPECT_LT(max_abs_diff(spec(t), example38::curvature(t)), 1e-6);
}
