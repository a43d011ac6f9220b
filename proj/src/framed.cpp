#include "mate4/framed.hpp"

#include <algorithm>
#include <cmath>

#include "mate4/error.hpp"
#include "mate4/stencil.hpp"

namespace mate4 {

Grid Grid::spanning(double t0, double t1, std::size_t count) {
  if (count < 2 || !(t1 > t0)) throw Error(ErrorCode::InvalidInput, "grid needs t1 > t0 and at least 2 nodes");
  return {t0, (t1 - t0) / static_cast<double>(count - 1), count};
}

double max_abs_diff(const FramedCurvature& a, const FramedCurvature& b) {
  const auto x = a.values();
  const auto y = b.values();
  double m = 0.0;
  for (int i = 0; i < 7; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

FramedCheck check_framed(std::span<const FramedCurvePoint> points, double tol) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "check_framed needs at least one point");
  FramedCheck r;
  for (const auto& p : points) {
    for (int i = 1; i <= 3; ++i) {
      r.tangency_sup = std::max(r.tangency_sup, std::abs(dot(p.dgamma, p.frame.nu(i))));
    }
    r.frame_sup = std::max(r.frame_sup, frame_defect(p.frame));
  }
  r.pass = r.tangency_sup <= tol && r.frame_sup <= tol;
  return r;
}

FramedCurvature framed_curvature(const FramedCurvePoint& p) {
  const auto& f = p.frame;
  FramedCurvature k;
  k.l1 = dot(p.dnu[0], f.triple.nu2);
  k.l2 = dot(p.dnu[0], f.triple.nu3);
  k.l3 = dot(p.dnu[0], f.mu);
  k.l4 = dot(p.dnu[1], f.triple.nu3);
  k.l5 = dot(p.dnu[1], f.mu);
  k.l6 = dot(p.dnu[2], f.mu);
  k.alpha = dot(p.dgamma, f.mu);
  return k;
}

std::vector<FramedCurvature> framed_curvature(std::span<const FramedCurvePoint> points) {
  std::vector<FramedCurvature> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(framed_curvature(p));
  return out;
}

double structure_residual(const FramedCurvePoint& p, const FramedCurvature& k) {
  const auto& n1 = p.frame.triple.nu1;
  const auto& n2 = p.frame.triple.nu2;
  const auto& n3 = p.frame.triple.nu3;
  const auto& mu = p.frame.mu;
  double r = max_abs(p.dnu[0] - (k.l1 * n2 + k.l2 * n3 + k.l3 * mu));
  r = std::max(r, max_abs(p.dnu[1] - (-k.l1 * n1 + k.l4 * n3 + k.l5 * mu)));
  r = std::max(r, max_abs(p.dnu[2] - (-k.l2 * n1 - k.l4 * n2 + k.l6 * mu)));
  return std::max(r, max_abs(p.dgamma - k.alpha * mu));
}

double uniform_step(std::span<const FramedNode> nodes) {
  if (nodes.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 nodes");
  const double h = (nodes.back().t - nodes.front().t) / static_cast<double>(nodes.size() - 1);
  if (!(h > 0.0)) throw Error(ErrorCode::GridMismatch, "grid must be increasing");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double expect = nodes.front().t + h * static_cast<double>(i);
    if (std::abs(nodes[i].t - expect) > 1e-6 * h) throw Error(ErrorCode::GridMismatch, "grid is not uniform");
  }
  return h;
}

std::vector<FramedCurvePoint> differentiate_nodes(std::span<const FramedNode> nodes) {
  const double h = uniform_step(nodes);
  const std::size_t n = nodes.size();
  std::vector<Vec4> g(n), v1(n), v2(n), v3(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = nodes[i].gamma;
    v1[i] = nodes[i].frame.triple.nu1;
    v2[i] = nodes[i].frame.triple.nu2;
    v3[i] = nodes[i].frame.triple.nu3;
  }
  const auto dg = differentiate_table<Vec4>(g, h);
  const auto d1 = differentiate_table<Vec4>(v1, h);
  const auto d2 = differentiate_table<Vec4>(v2, h);
  const auto d3 = differentiate_table<Vec4>(v3, h);
  std::vector<FramedCurvePoint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {nodes[i].t, nodes[i].gamma, nodes[i].frame, dg[i], {d1[i], d2[i], d3[i]}};
  }
  return out;
}

Mat3 rotation_matrix(const EulerAngles& a) {
  const double cf = std::cos(a.phi), sf = std::sin(a.phi);
  const double cp = std::cos(a.psi), sp = std::sin(a.psi);
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  return {{{cf * cp - sf * ct * sp, -cf * sp - sf * ct * cp, sf * st},
           {sf * cp + cf * ct * sp, -sf * sp + cf * ct * cp, -cf * st},
           {st * sp, st * cp, ct}}};
}

MovingFrame rotate_frame(const MovingFrame& f, const EulerAngles& a) {
  const Mat3 m = rotation_matrix(a);
  const Vec4* v[3] = {&f.triple.nu1, &f.triple.nu2, &f.triple.nu3};
  Vec4 out[3];
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * *v[0] + m[i][1] * *v[1] + m[i][2] * *v[2];
  return {{out[0], out[1], out[2]}, f.mu};
}

FramedCurvature transformed_curvature(const FramedCurvature& k, const EulerAngles& a,
                                      const EulerRates& r) {
  const double cf = std::cos(a.phi), sf = std::sin(a.phi);
  const double cp = std::cos(a.psi), sp = std::sin(a.psi);
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double p = k.l1 - r.dpsi;
  const double u = k.l2 * cp - k.l4 * sp;
  const double w = k.l2 * sp + k.l4 * cp;
  const double x = k.l3 * sp + k.l5 * cp;
  const double y = k.l3 * cp - k.l5 * sp;
  FramedCurvature o;
  o.l1 = -r.dphi + p * ct - u * st;
  o.l2 = (r.dtheta - w) * sf + (u * ct + p * st) * cf;
  o.l3 = (k.l6 * st - x * ct) * sf + y * cf;
  o.l4 = (-r.dtheta + w) * cf + (p * st + u * ct) * sf;
  o.l5 = (-k.l6 * st + x * ct) * cf + y * sf;
  o.l6 = x * st + k.l6 * ct;
  o.alpha = k.alpha;
  return o;
}

CurvatureSpec CurvatureSpec::from_function(Fn fn, double t_min, double t_max) {
  if (!(t_max > t_min)) throw Error(ErrorCode::InvalidInput, "empty curvature domain");
  CurvatureSpec s;
  s.fn_ = std::move(fn);
  s.t_min_ = t_min;
  s.t_max_ = t_max;
  return s;
}

CurvatureSpec CurvatureSpec::from_table(double t0, double step, std::vector<FramedCurvature> table) {
  if (table.size() < 4) throw Error(ErrorCode::InsufficientSamples, "curvature table needs at least 4 rows");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidInput, "table step must be positive");
  for (const auto& k : table) {
    for (double v : k.values()) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "curvature table has non-finite entries");
    }
  }
  CurvatureSpec s;
  s.t_min_ = t0;
  s.step_ = step;
  s.t_max_ = t0 + step * static_cast<double>(table.size() - 1);
  s.table_ = std::move(table);
  return s;
}

FramedCurvature CurvatureSpec::operator()(double t) const {
  const double slack = 1e-9 * std::max(1.0, t_max_ - t_min_);
  if (t < t_min_ - slack || t > t_max_ + slack) {
    throw Error(ErrorCode::OutOfDomain, "curvature requested outside its domain");
  }
  if (fn_) return fn_(t);
  const long n = static_cast<long>(table_.size());
  const double u = (t - t_min_) / step_;
  const long near = std::lround(u);
  if (std::abs(u - static_cast<double>(near)) < 1e-12 && near >= 0 && near < n) return table_[near];
  long i0 = static_cast<long>(std::floor(u)) - 1;
  i0 = std::clamp(i0, 0L, n - 4);
  std::array<double, 7> acc{};
  for (long j = i0; j < i0 + 4; ++j) {
    double w = 1.0;
    for (long m = i0; m < i0 + 4; ++m) {
      if (m != j) w *= (u - static_cast<double>(m)) / static_cast<double>(j - m);
    }
    const auto v = table_[j].values();
    for (int c = 0; c < 7; ++c) acc[c] += w * v[c];
  }
  return FramedCurvature::from_values(acc);
}

EulerRates adapted_rates(const FramedCurvature& k, const EulerAngles& a) {
  const double cp = std::cos(a.psi), sp = std::sin(a.psi);
  const double st = std::sin(a.theta), ct = std::cos(a.theta);
  const double u = k.l2 * cp - k.l4 * sp;
  return {-u / st, u * ct / st + k.l1, k.l2 * sp + k.l4 * cp};
}

AdaptedFrame adapted_frame(const CurvatureSpec& spec, const Grid& grid, EulerAngles initial,
                           double theta_min) {
  if (grid.count < 2 || !(grid.step > 0.0)) throw Error(ErrorCode::InvalidInput, "invalid grid");
  auto guard = [&](const EulerAngles& a, double t) {
    if (std::abs(std::sin(a.theta)) < theta_min) {
      throw Error(ErrorCode::ThetaDegenerate,
                  "|sin theta| below theta_min at t = " + std::to_string(t));
    }
  };
  auto rhs = [&](double t, const EulerAngles& a) {
    guard(a, t);
    return adapted_rates(spec(t), a);
  };
  auto add = [](EulerAngles a, const EulerRates& r, double h) {
    return EulerAngles{a.phi + h * r.dphi, a.psi + h * r.dpsi, a.theta + h * r.dtheta};
  };

  AdaptedFrame out;
  out.t.reserve(grid.count);
  EulerAngles a = initial;
  const double h = grid.step;
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double t = grid.at(i);
    const FramedCurvature k = spec(t);
    guard(a, t);
    const EulerRates r = adapted_rates(k, a);
    out.t.push_back(t);
    out.angles.push_back(a);
    out.rates.push_back(r);
    out.curvature.push_back(transformed_curvature(k, a, r));
    if (i + 1 == grid.count) break;
    const EulerRates k1 = r;
    const EulerRates k2 = rhs(t + 0.5 * h, add(a, k1, 0.5 * h));
    const EulerRates k3 = rhs(t + 0.5 * h, add(a, k2, 0.5 * h));
    const EulerRates k4 = rhs(t + h, add(a, k3, h));
    a.phi += h / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    a.psi += h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
    a.theta += h / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
  }
  return out;
}

}  // namespace mate4
