#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mate4/builtin_curves.hpp"
#include "mate4/error.hpp"
#include "mate4/frenet.hpp"
#include "mate4/geom4.hpp"

using namespace mate4;

namespace {

const double kA = 1.0;
const double kB = std::sqrt(3.0);

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

std::vector<Vec4> sample(const TaylorCurve& c, double t0, double step, int n) {
  std::vector<Vec4> out;
  for (int i = 0; i < n; ++i) out.push_back(taylor_jet(c, t0 + step * i, 0).d[0]);
  return out;
}

}  // namespace

TEST(Jet, AnalyticLine) {
  const TaylorCurve line = [](const Tay& t) { return TVec4{t, Tay(0.0), Tay(0.0), Tay(0.0)}; };
  const auto src = CurveSource::from_taylor(line, 0.0, 5.0);
  const auto j = jet(src, 3.0, 4);
  expect_vec(j.d[0], {3, 0, 0, 0}, 0.0);
  expect_vec(j.d[1], basis(0), 0.0);
  for (int k = 2; k <= 4; ++k) expect_vec(j.d[k], Vec4{}, 0.0);
}

TEST(Jet, SampledTorusIsUnitSpeed) {
  const double h = 1e-3;
  const auto src = CurveSource::sampled(-20 * h, h, sample(torus::curve(kA, kB), -20 * h, h, 41));
  const auto j = jet(src, src.t_min() + 20 * h, 1);
  EXPECT_NEAR(norm(j.d[1]), 1.0, 1e-9);
}

TEST(Jet, SampledMatchesAnalyticExample38) {
  const auto exact = taylor_jet(example38::curve(), 1.0);
  {
    const double h = 1e-3;
    const auto src = CurveSource::sampled(1.0 - 10 * h, h, sample(example38::curve(), 1.0 - 10 * h, h, 21));
    const auto j = jet(src, src.t_min() + 10 * h, 2);
    for (int k = 1; k <= 2; ++k) EXPECT_LT(max_abs(j.d[k] - exact.d[k]), 1e-8) << "order " << k;
  }
  {
    const double h = 1e-2;
    const auto src = CurveSource::sampled(1.0 - 10 * h, h, sample(example38::curve(), 1.0 - 10 * h, h, 21));
    const auto j = jet(src, src.t_min() + 10 * h, 4);
    for (int k = 3; k <= 4; ++k) EXPECT_LT(max_abs(j.d[k] - exact.d[k]), 1e-5) << "order " << k;
  }
}

TEST(Jet, SampledErrors) {
  std::vector<Vec4> few(5);
  EXPECT_EQ(code_of([&] { CurveSource::sampled(0.0, 0.1, few); }), ErrorCode::InsufficientSamples);
  const auto src = CurveSource::sampled(0.0, 0.1, std::vector<Vec4>(20));
  EXPECT_EQ(code_of([&] { src.jet(0.05, 1); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([&] { src.jet(0.1, 4); }), ErrorCode::InsufficientSamples);
  EXPECT_EQ(code_of([&] { src.jet(5.0, 1); }), ErrorCode::OutOfDomain);
}

TEST(FrenetArclength, TorusCurvatures) {
  for (double s : {0.0, 0.4, 1.7, 3.0}) {
    const auto f = frenet_arclength(taylor_jet(torus::curve(kA, kB), s));
    EXPECT_NEAR(f.k1, std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(f.k2, 1 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(f.k3, -std::sqrt(6.0) / 2, 1e-9);
    // Closed form of the third curvature in terms of a, b.
    EXPECT_NEAR(f.k3, -std::sqrt(2.0) * kA * kB / std::sqrt(kA * kA + kB * kB), 1e-9);
  }
}

TEST(FrenetArclength, SatisfiesFrenetSerret) {
  // Differentiate the frame numerically and compare with the Frenet-Serret system.
  const auto c = torus::curve(kA, kB);
  const double s = 0.9, h = 1e-4;
  const auto f0 = frenet_arclength(taylor_jet(c, s));
  const auto fp = frenet_arclength(taylor_jet(c, s + h));
  const auto fm = frenet_arclength(taylor_jet(c, s - h));
  auto d = [&](Vec4 FrenetApparatus::*m) { return (fp.*m - fm.*m) / (2 * h); };
  expect_vec(d(&FrenetApparatus::n1), -f0.k1 * f0.tangent + f0.k2 * f0.n2, 1e-6);
  expect_vec(d(&FrenetApparatus::n2), -f0.k2 * f0.n1 + f0.k3 * f0.n3, 1e-6);
  expect_vec(d(&FrenetApparatus::n3), -f0.k3 * f0.n2, 1e-6);
}

TEST(FrenetArclength, Errors) {
  const TaylorCurve circle = [](const Tay& s) { return TVec4{cos(s), sin(s), Tay(0.0), Tay(0.0)}; };
  EXPECT_EQ(code_of([&] { frenet_arclength(taylor_jet(circle, 0.3)); }), ErrorCode::Degenerate);
  const TaylorCurve fast = [](const Tay& s) { return torus::curve(kA, kB)(2.0 * s); };
  EXPECT_EQ(code_of([&] { frenet_arclength(taylor_jet(fast, 0.3)); }), ErrorCode::NotArcLength);
}

TEST(FrenetGeneral, ReparametrizationInvariance) {
  const auto c = torus::curve(kA, kB);
  const TaylorCurve slow = [c](const Tay& t) { return c(0.5 * t); };
  for (double t : {0.2, 1.0, 2.5}) {
    const auto ref = frenet_arclength(taylor_jet(c, t / 2));
    const auto f = frenet_general(taylor_jet(slow, t));
    EXPECT_NEAR(f.k1, ref.k1, 1e-9);
    EXPECT_NEAR(f.k2, ref.k2, 1e-9);
    EXPECT_NEAR(f.k3, ref.k3, 1e-9);
    expect_vec(f.n1, ref.n1, 1e-9);
    expect_vec(f.n2, ref.n2, 1e-9);
    expect_vec(f.n3, ref.n3, 1e-9);
  }
  EXPECT_NEAR(frenet_general(taylor_jet(c, 0.0)).k1, std::sqrt(2.0), 1e-9);
}

TEST(FrenetGeneral, RandomPolynomialCurves) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::array<std::array<double, 5>, 4> coef;
    for (auto& row : coef) {
      for (auto& v : row) v = n(rng);
    }
    const TaylorCurve poly = [coef](const Tay& t) {
      TVec4 g;
      for (int c = 0; c < 4; ++c) {
        Tay acc(0.0), p(1.0);
        for (int k = 0; k < 5; ++k) {
          acc += coef[c][k] * p;
          p = p * t;
        }
        g[c] = acc;
      }
      return g;
    };
    const double t = 0.3;
    const auto j = taylor_jet(poly, t);
    const auto f = frenet_general(j);
    // Gram-Schmidt of (d1, d2, d3) is the oracle for (t, n1, n2).
    const auto gs = repair_frame(j.d[1], j.d[2], j.d[3]);
    expect_vec(f.tangent, gs.nu1, 1e-10);
    expect_vec(f.n1, gs.nu2, 1e-10);
    expect_vec(f.n2, gs.nu3, 1e-10);
    const OrthoTriple a{f.tangent, f.n1, f.n2};
    EXPECT_LT(orthonormality_defect(a), 1e-10);
    EXPECT_NEAR(std::abs(dot(f.n3, f.n3)), 1.0, 1e-10);
    EXPECT_NEAR(dot(f.n3, f.n2), 0.0, 1e-10);
    EXPECT_GT(f.k1, 0.0);
    EXPECT_GT(f.k2, 0.0);
    const double d = det4(j.d[1], j.d[2], j.d[3], j.d[4]);
    if (std::abs(d) > 1e-8) EXPECT_EQ(f.k3 > 0, d > 0);
  }
}

TEST(Arclength, Examples) {
  const auto unit = CurveSource::from_taylor(torus::curve(kA, kB), 0.0, 3.0);
  const auto tab = arclength_table(unit, 0.5, 2.5, 40);
  for (std::size_t i = 0; i < tab.t.size(); ++i) EXPECT_NEAR(tab.s[i], tab.t[i] - 0.5, 1e-10);

  const TaylorCurve twice = [](const Tay& t) { return TVec4{2.0 * t, Tay(0.0), Tay(0.0), Tay(0.0)}; };
  EXPECT_NEAR(arclength_table(CurveSource::from_taylor(twice, 0.0, 1.0), 0.0, 1.0, 10).s.back(), 2.0, 1e-12);
}

TEST(Arclength, Example38AgainstTrapezoid) {
  const auto c = example38::curve();
  const int n = 1000000;
  const double h = 1.0 / n;
  // |gamma'(t)| = sqrt5 t for this curve; the oracle integrates the sampled speed.
  auto speed = [&](double t) { return norm(taylor_jet(c, t, 1).d[1]); };
  double trap = 0.5 * (speed(0.0) + speed(1.0));
  for (int i = 1; i < n; ++i) trap += speed(i * h);
  trap *= h;
  const auto tab = arclength_table(CurveSource::from_taylor(c, 0.0, 1.0), 0.0, 1.0, 200);
  EXPECT_NEAR(tab.s.back(), trap, 1e-8);
  EXPECT_NEAR(tab.s.back(), std::sqrt(5.0) / 2, 1e-10);
}
