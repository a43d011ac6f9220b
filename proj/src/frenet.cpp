#include "mate4/frenet.hpp"

#include <cmath>

#include "mate4/error.hpp"
#include "mate4/stencil.hpp"

namespace mate4 {

CurveSource CurveSource::analytic(JetFn fn, double t_min, double t_max) {
  if (!(t_max >= t_min)) throw Error(ErrorCode::InvalidInput, "empty curve domain");
  CurveSource s;
  s.fn_ = std::move(fn);
  s.t_min_ = t_min;
  s.t_max_ = t_max;
  return s;
}

CurveSource CurveSource::from_taylor(TaylorCurve fn, double t_min, double t_max) {
  return analytic([fn = std::move(fn)](double t, int order) { return taylor_jet(fn, t, order); },
                  t_min, t_max);
}

CurveSource CurveSource::sampled(double t0, double step, std::vector<Vec4> positions) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidInput, "grid step must be positive");
  if (positions.size() < 9) throw Error(ErrorCode::InsufficientSamples, "sampled curve needs at least 9 nodes");
  CurveSource s;
  s.sampled_ = true;
  s.t_min_ = t0;
  s.step_ = step;
  s.t_max_ = t0 + step * static_cast<double>(positions.size() - 1);
  s.positions_ = std::move(positions);
  return s;
}

CurveJet CurveSource::jet(double t, int order) const {
  if (order < 1 || order > 4) throw Error(ErrorCode::InvalidInput, "jet order must be 1..4");
  const double slack = sampled_ ? 1e-9 * step_ : 1e-12 * (1.0 + std::abs(t));
  if (t < t_min_ - slack || t > t_max_ + slack) {
    throw Error(ErrorCode::OutOfDomain, "parameter outside curve domain");
  }
  if (!sampled_) {
    CurveJet j = fn_(t, order);
    j.t = t;
    return j;
  }
  const double u = (t - t_min_) / step_;
  const long i = std::lround(u);
  if (std::abs(u - static_cast<double>(i)) > 1e-6) {
    throw Error(ErrorCode::OutOfDomain, "sampled curves are evaluated at grid nodes only");
  }
  const long n = static_cast<long>(positions_.size());
  const long hw = stencil_half_width(order);
  if (i - hw < 0 || i + hw > n - 1) {
    throw Error(ErrorCode::InsufficientSamples, "not enough grid margin for the stencil");
  }
  CurveJet j;
  j.t = t;
  j.d[0] = positions_[i];
  std::span<const Vec4> f(positions_);
  for (int k = 1; k <= order; ++k) j.d[k] = central_derivative(f, static_cast<std::size_t>(i), k, step_);
  return j;
}

CurveJet jet(const CurveSource& source, double t, int order) { return source.jet(t, order); }

CurveJet taylor_jet(const TaylorCurve& fn, double t, int order) {
  const TVec4 g = fn(Tay::variable(t));
  CurveJet j;
  j.t = t;
  for (int k = 0; k <= order; ++k) {
    for (int c = 0; c < 4; ++c) j.d[k][c] = g[c].derivative(k);
  }
  return j;
}

namespace {

Vec4 checked_triple(const CurveJet& jet) {
  const Vec4 c = triple_product(jet.d[1], jet.d[2], jet.d[3]);
  const double scale = norm(jet.d[1]) * norm(jet.d[2]) * norm(jet.d[3]);
  if (!(norm(c) > 1e-12 * scale) || scale == 0.0) {
    throw Error(ErrorCode::Degenerate, "d1 x d2 x d3 vanishes");
  }
  return c;
}

}  // namespace

FrenetApparatus frenet_arclength(const CurveJet& jet) {
  const Vec4& d1 = jet.d[1];
  const Vec4& d2 = jet.d[2];
  const Vec4& d3 = jet.d[3];
  if (std::abs(norm(d1) - 1.0) > 1e-6) throw Error(ErrorCode::NotArcLength, "|gamma'| differs from 1");
  const Vec4 c = checked_triple(jet);

  FrenetApparatus f;
  f.tangent = d1;
  f.k1 = norm(d2);
  f.n1 = d2 / f.k1;
  const Vec4 dn1 = (d3 - dot(f.n1, d3) * f.n1) / f.k1;
  const Vec4 w = dn1 + f.k1 * f.tangent;
  f.n2 = w / norm(w);
  f.n3 = triple_product(f.tangent, f.n1, f.n2);
  f.k2 = norm(c) / (f.k1 * f.k1);
  f.k3 = det4(d1, d2, d3, jet.d[4]) / (f.k1 * f.k1 * f.k1 * f.k2 * f.k2);
  return f;
}

FrenetApparatus frenet_general(const CurveJet& jet) {
  const Vec4& d1 = jet.d[1];
  const Vec4& d2 = jet.d[2];
  const double sp = norm(d1);
  if (!(sp > 0.0)) throw Error(ErrorCode::NotRegular, "gamma' vanishes");
  const Vec4 c = checked_triple(jet);
  const double cn = norm(c);

  FrenetApparatus f;
  f.tangent = d1 / sp;
  const double s2 = sp * sp;
  const Vec4 m = s2 * d2 - dot(d1, d2) * d1;
  f.n1 = m / norm(m);
  f.n3 = c / cn;
  f.n2 = -triple_product(f.n3, f.tangent, f.n1);
  const double g = std::max(0.0, s2 * dot(d2, d2) - dot(d1, d2) * dot(d1, d2));
  f.k1 = std::sqrt(g) / (s2 * sp);
  const double s6 = s2 * s2 * s2;
  f.k2 = cn / (s6 * f.k1 * f.k1);
  f.k3 = det4(d1, d2, jet.d[3], jet.d[4]) / (s6 * s2 * s2 * f.k1 * f.k1 * f.k1 * f.k2 * f.k2);
  return f;
}

ArcLengthTable arclength_table(const CurveSource& source, double t0, double t1, int n) {
  if (n < 1 || !(t1 > t0)) throw Error(ErrorCode::InvalidInput, "need t1 > t0 and n >= 1");
  const double h = (t1 - t0) / n;
  auto speed = [&](double t) { return norm(source.jet(t, 1).d[1]); };
  ArcLengthTable tab;
  tab.t.reserve(n + 1);
  tab.s.reserve(n + 1);
  tab.t.push_back(t0);
  tab.s.push_back(0.0);
  double fa = speed(t0);
  for (int i = 0; i < n; ++i) {
    const double a = t0 + h * i;
    const double b = (i + 1 == n) ? t1 : t0 + h * (i + 1);
    const double fm = speed(0.5 * (a + b));
    const double fb = speed(b);
    const double inc = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    if (!(inc > 0.0)) throw Error(ErrorCode::NotRegular, "arc length does not increase");
    tab.t.push_back(b);
    tab.s.push_back(tab.s.back() + inc);
    fa = fb;
  }
  return tab;
}

}  // namespace mate4
