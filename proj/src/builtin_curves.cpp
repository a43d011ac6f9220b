#include "mate4/builtin_curves.hpp"

#include <cmath>
#include <numbers>

#include "mate4/error.hpp"
#include "mate4/stencil.hpp"

namespace mate4 {

namespace {

Vec4 value(const TVec4& v, int k) {
  return {v[0].derivative(k), v[1].derivative(k), v[2].derivative(k), v[3].derivative(k)};
}

}  // namespace

FramedCurvePoint framed_point(const TaylorFramed& fc, double t) {
  const auto v = fc(Tay::variable(t));
  FramedCurvePoint p;
  p.t = t;
  p.gamma = value(v[0], 0);
  p.frame = MovingFrame::from_vectors(value(v[1], 0), value(v[2], 0), value(v[3], 0));
  p.dgamma = value(v[0], 1);
  p.dnu = {value(v[1], 1), value(v[2], 1), value(v[3], 1)};
  return p;
}

std::vector<FramedCurvePoint> framed_points(const TaylorFramed& fc, const Grid& grid) {
  std::vector<FramedCurvePoint> out;
  out.reserve(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) out.push_back(framed_point(fc, grid.at(i)));
  return out;
}

std::vector<FramedNode> framed_nodes(const TaylorFramed& fc, const Grid& grid) {
  std::vector<FramedNode> out;
  out.reserve(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const auto p = framed_point(fc, grid.at(i));
    out.push_back({p.t, p.gamma, p.frame});
  }
  return out;
}

namespace example38 {

namespace {

template <class S>
std::array<std::array<S, 4>, 4> eval(const S& t) {
  using std::cos;
  using std::sin;
  const double r5 = std::sqrt(5.0);
  const S s1 = sin(t), c1 = cos(t), s2 = sin(2.0 * t), c2 = cos(2.0 * t);
  return {{{t * s1 + c1, -(t * c1) + s1, t * s2 + 0.5 * c2, -(t * c2) + 0.5 * s2},
           {-s1, c1, S(0.0), S(0.0)},
           {S(0.0), S(0.0), -s2, c2},
           {(2.0 / r5) * c1, (2.0 / r5) * s1, (-1.0 / r5) * c2, (-1.0 / r5) * s2}}};
}

}  // namespace

TaylorFramed framed() {
  return [](const Tay& t) { return eval(t); };
}

TaylorCurve curve() {
  return [](const Tay& t) { return eval(t)[0]; };
}

FramedCurvature curvature(double t) {
  const double r5 = std::sqrt(5.0);
  return {0.0, -2.0 / r5, -1.0 / r5, 2.0 / r5, -4.0 / r5, 0.0, r5 * t};
}

Vec4 mate_gamma(double t) {
  const double r5 = std::sqrt(5.0);
  return {(t + r5) * std::sin(t) + std::cos(t), -(t + r5) * std::cos(t) + std::sin(t),
          t * std::sin(2 * t) + 0.5 * std::cos(2 * t), -t * std::cos(2 * t) + 0.5 * std::sin(2 * t)};
}

Vec4 mate_nu3(double t) {
  const double r5 = std::sqrt(5.0);
  const double r = std::sqrt((r5 * t + 1) * (r5 * t + 1) + 4.0);
  return Vec4{2 * t * std::cos(t), 2 * t * std::sin(t), -(t + r5) * std::cos(2 * t),
              -(t + r5) * std::sin(2 * t)} /
         r;
}

double mate_theta(double t) { return std::atan2(2.0, std::sqrt(5.0) * t + 1.0); }

}  // namespace example38

namespace torus {

namespace {

void validate(double a, double b) {
  if (a == 0.0 || b == 0.0 || a * a == b * b) {
    throw Error(ErrorCode::InvalidInput, "torus curve needs nonzero a, b with a^2 != b^2");
  }
}

template <class S>
std::array<S, 4> gamma(const S& s, double a, double b) {
  using std::cos;
  using std::sin;
  const double k = 1.0 / std::sqrt(2.0);
  return {(k / a) * cos(a * s), (k / a) * sin(a * s), (k / b) * cos(b * s), (k / b) * sin(b * s)};
}

}  // namespace

TaylorCurve curve(double a, double b) {
  validate(a, b);
  return [a, b](const Tay& s) { return gamma(s, a, b); };
}

TaylorFramed framed(double a, double b) {
  validate(a, b);
  return [a, b](const Tay& s) {
    const double r = std::sqrt(a * a + b * b);
    const double k = 1.0 / std::sqrt(2.0);
    const Tay ca = cos(a * s), sa = sin(a * s), cb = cos(b * s), sb = sin(b * s);
    std::array<TVec4, 4> out;
    out[0] = gamma(s, a, b);
    out[1] = {(-a / r) * ca, (-a / r) * sa, (-b / r) * cb, (-b / r) * sb};
    out[2] = {-k * sa, k * ca, k * sb, -k * cb};
    out[3] = {(b / r) * ca, (b / r) * sa, (-a / r) * cb, (-a / r) * sb};
    return out;
  };
}

FramedCurvature curvature(double a, double b) {
  validate(a, b);
  const double q = a * a + b * b;
  return {(b * b - a * a) / std::sqrt(2.0 * q), 0.0, std::sqrt(q / 2.0), -std::sqrt(2.0) * a * b / std::sqrt(q),
          0.0, 0.0, -1.0};
}

}  // namespace torus

std::vector<RegularFramedJet> regular_framed_jets(std::span<const FramedCurvature> curv, double step) {
  const std::size_t n = curv.size();
  std::vector<double> l1(n), l2(n), k1(n), l3(n);
  for (std::size_t i = 0; i < n; ++i) {
    l1[i] = curv[i].l1;
    l2[i] = curv[i].l2;
    k1[i] = curv[i].l3;
    l3[i] = curv[i].l4;
  }
  const auto d1 = differentiate_table<double>(l1, step);
  const auto d2 = differentiate_table<double>(l2, step);
  const auto dk = differentiate_table<double>(k1, step);
  const auto d3 = differentiate_table<double>(l3, step);
  std::vector<RegularFramedJet> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {l1[i], l2[i], k1[i], l3[i], d1[i], d2[i], dk[i], d3[i]};
  return out;
}

KappaJet kappa_jet(const TaylorCurve& fn, double s) {
  // Frenet curvatures as Taylor series in s; valid for unit-speed curves.
  const TVec4 g = fn(Tay::variable(s));
  const TVec4 d1 = tdiff(g);
  const TVec4 d2 = tdiff(d1);
  const TVec4 d3 = tdiff(d2);
  const TVec4 d4 = tdiff(d3);
  const Tay k1 = sqrt(tdot(d2, d2));
  // |d1 x d2 x d3|^2 as the Gram determinant of d1, d2, d3.
  const Tay a11 = tdot(d1, d1), a12 = tdot(d1, d2), a13 = tdot(d1, d3);
  const Tay a22 = tdot(d2, d2), a23 = tdot(d2, d3), a33 = tdot(d3, d3);
  const Tay gram = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) + a13 * (a12 * a23 - a22 * a13);
  const Tay c = sqrt(gram);
  const Tay k2 = c / (k1 * k1);
  // det4 = dot(d1 x d2 x d3, d4) expanded by minors.
  auto minor = [&](int skip) {
    int k[3];
    for (int i = 0, j = 0; i < 4; ++i) {
      if (i != skip) k[j++] = i;
    }
    return d1[k[0]] * (d2[k[1]] * d3[k[2]] - d2[k[2]] * d3[k[1]]) -
           d1[k[1]] * (d2[k[0]] * d3[k[2]] - d2[k[2]] * d3[k[0]]) +
           d1[k[2]] * (d2[k[0]] * d3[k[1]] - d2[k[1]] * d3[k[0]]);
  };
  const Tay det = minor(0) * d4[0] - minor(1) * d4[1] + minor(2) * d4[2] - minor(3) * d4[3];
  const Tay k3 = det / (k1 * k1 * k1 * k2 * k2);
  KappaJet j;
  for (int i = 0; i < 4; ++i) {
    j.k1[i] = k1.derivative(i);
    j.k2[i] = k2.derivative(i);
    j.k3[i] = k3.derivative(i);
  }
  return j;
}

}  // namespace mate4
