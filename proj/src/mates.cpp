#include "mate4/mates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "mate4/error.hpp"
#include "mate4/stencil.hpp"

namespace mate4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBridgeTol = 0.25;

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

double reduce_half_open(double a) {
  while (a > kPi / 2) a -= kPi;
  while (a <= -kPi / 2) a += kPi;
  return a;
}

std::string node_list(const std::vector<std::size_t>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(nodes[i]);
  }
  return s;
}

// Continuous angle a_i with tan a_i = y_i / x_i, pi-periodic. Nodes where (x, y)
// vanish are bridged by linear interpolation between determined neighbours.
// `joint` flags nodes where the other condition degenerates too.
std::vector<double> continuous_angle(const std::vector<double>& y, const std::vector<double>& x,
                                     const std::vector<bool>& joint) {
  const std::size_t n = y.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::hypot(x[i], y[i]));
  const double eps = 1e-12 * std::max(1.0, scale);

  std::vector<std::optional<double>> a(n);
  std::optional<double> prev;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::hypot(x[i], y[i]) <= eps) continue;
    double v = std::atan2(y[i], x[i]);
    if (!prev) {
      v = reduce_half_open(v);
    } else {
      v += kPi * std::round((*prev - v) / kPi);
    }
    a[i] = v;
    prev = v;
  }
  std::vector<double> out(n, 0.0);
  if (!prev) return out;

  std::size_t i = 0;
  std::optional<std::size_t> last;
  while (i < n) {
    if (a[i]) {
      out[i] = *a[i];
      last = i;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !a[j]) ++j;
    if (!last) {
      for (std::size_t k = i; k < j; ++k) out[k] = *a[j];
    } else if (j == n) {
      for (std::size_t k = i; k < j; ++k) out[k] = out[*last];
    } else {
      const double vl = out[*last];
      const double vr = *a[j];
      if (std::abs(vr - vl) > kBridgeTol) {
        std::vector<std::size_t> nodes;
        bool jointly = false;
        for (std::size_t k = i; k < j; ++k) {
          nodes.push_back(k);
          jointly = jointly || joint[k];
        }
        if (jointly) {
          throw Error(ErrorCode::JointlyDegenerate,
                      "cannot bridge angle across degenerate nodes " + node_list(nodes));
        }
        throw Error(ErrorCode::ConditionViolated,
                    "no continuous angle across nodes " + node_list(nodes));
      }
      const double span = static_cast<double>(j - *last);
      for (std::size_t k = i; k < j; ++k) {
        const double w = static_cast<double>(k - *last) / span;
        out[k] = vl + w * (vr - vl);
      }
    }
    i = j;
  }
  return out;
}

double cond1(const FramedCurvature& k, double psi) { return k.l1 * std::cos(psi) - k.l2 * std::sin(psi); }

double xsum(const FramedCurvature& k, double psi) { return k.l1 * std::sin(psi) + k.l2 * std::cos(psi); }

double cond2(const FramedCurvature& k, double lambda, double psi, double theta) {
  return lambda * xsum(k, psi) * std::cos(theta) - (k.alpha + lambda * k.l3) * std::sin(theta);
}

void require_lambda(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidInput, "lambda must be a nonzero constant");
}

void require_sizes(const MateParams& p, std::size_t n) {
  if (p.psi.size() != n || p.theta.size() != n || (!p.phi.empty() && p.phi.size() != n)) {
    throw Error(ErrorCode::InvalidInput, "mate parameters do not match the grid");
  }
}

double phi_at(const MateParams& p, std::size_t i) { return p.phi.empty() ? 0.0 : p.phi[i]; }

}  // namespace

ConditionReport regular_bertrand_obstruction(std::span<const double> k3, double tol) {
  ConditionReport r;
  double mn = std::numeric_limits<double>::infinity();
  for (double v : k3) {
    r.residual_sup = std::max(r.residual_sup, std::abs(v));
    mn = std::min(mn, std::abs(v));
  }
  r.details["k3_min_abs"] = k3.empty() ? 0.0 : mn;
  r.verdict = verdict_of(r.residual_sup <= tol);
  return r;
}

SecondMateAux second_mate_aux(const KappaJet& k, double lambda) {
  const double k1 = k.k1[0], d1 = k.k1[1], dd1 = k.k1[2], ddd1 = k.k1[3];
  const double k2 = k.k2[0], d2 = k.k2[1], dd2 = k.k2[2], ddd2 = k.k2[3];
  const double k3 = k.k3[0], d3 = k.k3[1], dd3 = k.k3[2];
  const double p = 1.0 - lambda * k1;
  const double l = lambda;
  const double q = p * d2 + l * d1 * k2;
  SecondMateAux a;
  a.f1 = l * l * d1 * d1 * k2 * k2 * k2 * k2 * k3 * k3 + p * p * d1 * d1 * k2 * k2 * k3 * k3 + d1 * d1 * q * q;
  a.f2 = k2 * (2 * d2 * d2 * k3 + k2 * d2 * d3 - k2 * dd2 * k3 + k2 * k2 * k3 * k3 * k3) +
         k1 * (2 * d1 * d2 * k3 + d1 * k2 * d3 - dd1 * k2 * k3);
  a.g1 = p * (d1 * d1 + d2 * d2 + k2 * k2 * k3 * k3) - d1 * d1 / 4;
  // The last term carries lambda/2; the printed lambda^2/2 does not match the
  // direct Frenet computation of the mate.
  a.g2 = l * l / 2 * d1 * k2 * k2 * k3 * (-l * ddd1 + k1 * d1 / 2) -
         0.5 * p * l * d1 * k2 * k3 * (-d1 * k2 / 2 + l * ddd2 - 3 * l * d2 * k3 * k3 - 3 * l * k2 * k3 * d3) +
         l / 2 * d1 * q * (3 * l * dd2 * k3 - l * k2 * k3 * k3 * k3 + 3 * l * d2 * d3 + l * k2 * dd3);
  return a;
}

double second_mate_k1bar(const KappaJet& k, double lambda) {
  const double p = 1.0 - lambda * k.k1[0];
  if (!(p > 0.0)) throw Error(ErrorCode::DomainError, "1 - lambda kappa1 must be positive");
  const SecondMateAux a = second_mate_aux(k, lambda);
  if (!(a.g1 > 0.0)) throw Error(ErrorCode::DomainError, "g1 must be positive");
  return lambda * std::sqrt(a.g1) / std::pow(p, 1.5);
}

ConditionReport check_second_mannheim_regular(std::span<const KappaJet> k, double lambda, double tol) {
  require_lambda(lambda);
  ConditionReport r;
  double lin = 0.0, f1min = std::numeric_limits<double>::infinity(), f2sup = 0.0;
  for (const auto& j : k) {
    if (!(j.k1[0] > 0.0) || !(j.k2[0] > 0.0)) {
      throw Error(ErrorCode::NonPositiveCurvature, "kappa1 and kappa2 must be positive");
    }
    lin = std::max(lin, std::abs(lambda * (j.k1[0] * j.k1[0] + j.k2[0] * j.k2[0]) - j.k1[0]));
    const SecondMateAux a = second_mate_aux(j, lambda);
    f1min = std::min(f1min, a.f1);
    f2sup = std::max(f2sup, std::abs(a.f2));
  }
  if (k.empty()) f1min = 0.0;
  r.details["lincomb_sup"] = lin;
  r.details["f1_min"] = f1min;
  r.details["f2_sup"] = f2sup;
  r.residual_sup = std::max(lin, f2sup);
  r.verdict = verdict_of(lin <= tol && f2sup <= tol && f1min > tol);
  return r;
}

MateCurvatureTriple second_mate_curvature(const KappaJet& k, double lambda) {
  const double p = 1.0 - lambda * k.k1[0];
  if (!(p > 0.0)) throw Error(ErrorCode::DomainError, "1 - lambda kappa1 must be positive");
  const SecondMateAux a = second_mate_aux(k, lambda);
  if (!(a.g1 > 0.0)) throw Error(ErrorCode::DomainError, "g1 must be positive");
  if (!(a.f1 > 0.0)) throw Error(ErrorCode::DomainError, "f1 vanishes, the mate is degenerate");
  MateCurvatureTriple m;
  m.g1 = a.g1;
  m.g2 = a.g2;
  m.k1bar = lambda * std::sqrt(a.g1) / std::pow(p, 1.5);
  m.k2bar = lambda * std::sqrt(a.f1) / (2.0 * p * p * p * m.k1bar * m.k1bar);
  m.k3bar = a.g2 / (std::pow(p, 5) * m.k1bar * m.k1bar * m.k1bar * m.k2bar * m.k2bar);
  return m;
}

ConditionReport check_third_mannheim_regular(std::span<const KappaJet> k, double lambda, double tol) {
  require_lambda(lambda);
  ConditionReport r;
  if (k.empty()) {
    r.details["const_defect"] = 0.0;
    r.details["lincomb_sup"] = 0.0;
    r.details["k3_min_abs"] = 0.0;
    return r;
  }
  double lo1 = k[0].k1[0], hi1 = lo1, lo2 = k[0].k2[0], hi2 = lo2;
  double lin = 0.0, k3min = std::numeric_limits<double>::infinity();
  bool positive = true;
  for (const auto& j : k) {
    lo1 = std::min(lo1, j.k1[0]);
    hi1 = std::max(hi1, j.k1[0]);
    lo2 = std::min(lo2, j.k2[0]);
    hi2 = std::max(hi2, j.k2[0]);
    positive = positive && j.k1[0] > 0.0 && j.k2[0] > 0.0;
    lin = std::max(lin, std::abs(lambda * (j.k1[0] * j.k1[0] + j.k2[0] * j.k2[0]) - j.k1[0]));
    k3min = std::min(k3min, std::abs(j.k3[0]));
  }
  const double cdef = std::max(hi1 - lo1, hi2 - lo2);
  r.details["const_defect"] = cdef;
  r.details["lincomb_sup"] = lin;
  r.details["k3_min_abs"] = k3min;
  r.residual_sup = std::max(cdef, lin);
  r.verdict = verdict_of(positive && cdef <= tol && lin <= tol && k3min > tol);
  return r;
}

std::vector<MateCurvatureTriple> third_mate_curvature(double k1, double k2, std::span<const double> k3,
                                                      double lambda) {
  const double p = 1.0 - lambda * k1;
  if (!(p > 0.0)) throw Error(ErrorCode::DomainError, "1 - lambda kappa1 must be positive");
  std::vector<MateCurvatureTriple> out;
  out.reserve(k3.size());
  for (double v : k3) {
    if (v == 0.0) throw Error(ErrorCode::DomainError, "kappa3 vanishes");
    MateCurvatureTriple m;
    m.k1bar = lambda * k2 * std::abs(v) / p;
    m.k2bar = std::abs(v);
    m.k3bar = k2 * v / (p * std::abs(v));
    out.push_back(m);
  }
  return out;
}

std::vector<double> bertrand_theta(std::span<const FramedCurvature> curv, double lambda,
                                   std::span<const double> psi) {
  require_lambda(lambda);
  if (psi.size() != curv.size()) throw Error(ErrorCode::InvalidInput, "psi does not match the grid");
  const std::size_t n = curv.size();
  std::vector<double> y(n), x(n);
  std::vector<bool> joint(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = lambda * xsum(curv[i], psi[i]);
    x[i] = curv[i].alpha + lambda * curv[i].l3;
  }
  return continuous_angle(y, x, joint);
}

MateParams bertrand_angles(std::span<const FramedCurvature> curv, double lambda) {
  require_lambda(lambda);
  const std::size_t n = curv.size();
  std::vector<double> y(n), x(n);
  std::vector<bool> joint(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(curv[i].alpha + lambda * curv[i].l3));
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = curv[i].l1;
    x[i] = curv[i].l2;
    joint[i] = std::abs(curv[i].alpha + lambda * curv[i].l3) <= 1e-12 * std::max(1.0, scale);
  }
  MateParams p;
  p.lambda = lambda;
  p.psi = continuous_angle(y, x, joint);
  p.theta = bertrand_theta(curv, lambda, p.psi);
  p.phi.assign(n, 0.0);
  return p;
}

ConditionReport check_bertrand_framed(std::span<const FramedCurvature> curv, const MateParams& params,
                                      double tol) {
  require_lambda(params.lambda);
  require_sizes(params, curv.size());
  double c1 = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < curv.size(); ++i) {
    c1 = std::max(c1, std::abs(cond1(curv[i], params.psi[i])));
    c2 = std::max(c2, std::abs(cond2(curv[i], params.lambda, params.psi[i], params.theta[i])));
  }
  ConditionReport r;
  r.details["cond1"] = c1;
  r.details["cond2"] = c2;
  r.residual_sup = std::max(c1, c2);
  r.verdict = verdict_of(c1 <= tol && c2 <= tol);
  return r;
}

AngleRates angle_rates(const MateParams& params, double step) {
  AngleRates r;
  r.dpsi = differentiate_table<double>(params.psi, step);
  r.dtheta = differentiate_table<double>(params.theta, step);
  if (params.phi.empty()) {
    r.dphi.assign(params.psi.size(), 0.0);
  } else {
    r.dphi = differentiate_table<double>(params.phi, step);
  }
  return r;
}

std::vector<FramedNode> construct_bertrand_mate(std::span<const FramedNode> fc,
                                                std::span<const FramedCurvature> curv,
                                                const MateParams& params, double tol) {
  if (curv.size() != fc.size()) throw Error(ErrorCode::InvalidInput, "curvature does not match the curve");
  const ConditionReport rep = check_bertrand_framed(curv, params, tol);
  if (!rep.passed()) {
    throw Error(ErrorCode::ConditionViolated,
                "Bertrand conditions miss by " + std::to_string(rep.residual_sup));
  }
  std::vector<FramedNode> out;
  out.reserve(fc.size());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const auto& f = fc[i].frame;
    const Mat3 a = rotation_matrix({phi_at(params, i), params.psi[i], params.theta[i]});
    const Vec4 nb2 = a[0][0] * f.triple.nu2 + a[0][1] * f.triple.nu3 + a[0][2] * f.mu;
    const Vec4 nb3 = a[1][0] * f.triple.nu2 + a[1][1] * f.triple.nu3 + a[1][2] * f.mu;
    out.push_back({fc[i].t, fc[i].gamma + params.lambda * f.triple.nu1,
                   MovingFrame::from_vectors(f.triple.nu1, nb2, nb3)});
  }
  return out;
}

std::vector<FramedNode> construct_bertrand_mate(std::span<const FramedNode> fc, const MateParams& params,
                                                double tol) {
  const auto curv = framed_curvature(differentiate_nodes(fc));
  return construct_bertrand_mate(fc, curv, params, tol);
}

std::vector<FramedCurvature> mate_curvature(std::span<const FramedCurvature> curv, const MateParams& params,
                                            const AngleRates& rates, double tol) {
  const ConditionReport rep = check_bertrand_framed(curv, params, tol);
  if (!rep.passed()) {
    throw Error(ErrorCode::ConditionViolated,
                "Bertrand conditions miss by " + std::to_string(rep.residual_sup));
  }
  if (rates.dpsi.size() != curv.size() || rates.dtheta.size() != curv.size() ||
      rates.dphi.size() != curv.size()) {
    throw Error(ErrorCode::InvalidInput, "angle rates do not match the grid");
  }
  const double lam = params.lambda;
  std::vector<FramedCurvature> out;
  out.reserve(curv.size());
  for (std::size_t i = 0; i < curv.size(); ++i) {
    const auto& k = curv[i];
    const double cf = std::cos(phi_at(params, i)), sf = std::sin(phi_at(params, i));
    const double cp = std::cos(params.psi[i]), sp = std::sin(params.psi[i]);
    const double ct = std::cos(params.theta[i]), st = std::sin(params.theta[i]);
    const double x = k.l1 * sp + k.l2 * cp;
    const double q = k.l4 - rates.dpsi[i];
    const double u = k.l5 * cp - k.l6 * sp;
    const double w = k.l5 * sp + k.l6 * cp;
    FramedCurvature m;
    m.l1 = -k.alpha * sf * st / lam;
    m.l2 = x * cf * ct - k.l3 * cf * st;
    m.l3 = x * st + k.l3 * ct;
    m.l4 = -rates.dphi[i] + q * ct - u * st;
    m.l5 = rates.dtheta[i] * sf + q * cf * st - w * sf + u * cf * ct;
    m.l6 = -rates.dtheta[i] * cf + q * sf * st + w * cf + u * sf * ct;
    m.alpha = lam * x * st + (k.alpha + lam * k.l3) * ct;
    out.push_back(m);
  }
  return out;
}

std::vector<FramedNode> mannheim_permute(std::span<const FramedNode> mate, MannheimKind kind) {
  std::vector<FramedNode> out;
  out.reserve(mate.size());
  for (const auto& n : mate) {
    const auto& t = n.frame.triple;
    // Cyclic permutations keep the triple product, so mu is carried over.
    const OrthoTriple p = kind == MannheimKind::second ? OrthoTriple{t.nu3, t.nu1, t.nu2}
                                                       : OrthoTriple{t.nu2, t.nu3, t.nu1};
    out.push_back({n.t, n.gamma, {p, n.frame.mu}});
  }
  return out;
}

OffsetProfile offset_profile(std::span<const FramedNode> base, std::span<const FramedNode> mate) {
  if (base.size() != mate.size() || base.empty()) throw Error(ErrorCode::GridMismatch, "curves differ in length");
  OffsetProfile p;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Vec4 d = mate[i].gamma - base[i].gamma;
    const Vec4& n1 = base[i].frame.triple.nu1;
    const double l = dot(d, n1);
    p.lambda.push_back(l);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    p.normal_residual = std::max(p.normal_residual, max_abs(d - l * n1));
  }
  p.lambda_spread = hi - lo;
  return p;
}

SignMatch match_up_to_sign(std::span<const Vec4> a, std::span<const Vec4> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "sequences differ in length");
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = std::max(plus, max_abs(a[i] - b[i]));
    minus = std::max(minus, max_abs(a[i] + b[i]));
  }
  return plus <= minus ? SignMatch{1, plus} : SignMatch{-1, minus};
}

TaylorCurve normal_offset(TaylorCurve base, double lambda) {
  return [base = std::move(base), lambda](const Tay& t) {
    const TVec4 g = base(t);
    const TVec4 d1 = tdiff(g);
    const TVec4 d2 = tdiff(d1);
    const TVec4 m = tdot(d1, d1) * d2 - tdot(d1, d2) * d1;
    const Tay inv = 1.0 / sqrt(tdot(m, m));
    return g + (lambda * inv) * m;
  };
}

FramedCurvature as_septuple(const RegularFramedJet& j) { return {j.l1, j.l2, j.k1, j.l3, 0.0, 0.0, -1.0}; }

double h_diagnostic(const RegularFramedJet& j, double lambda) {
  const double p = 1.0 - lambda * j.k1;
  const double q = p * j.k1 - j.l1 * j.l1 - j.l2 * j.l2;
  const double a = j.dl1 - j.l2 * j.l3;
  const double lk = lambda * j.dk1;
  const double e = j.l2 * a - j.l1 * (j.dl2 + j.l1 * j.l3);
  return p * p * q * q + p * a * (p * a + 2 * lk * j.l1) +
         p * (j.dl2 - j.l1 * j.l3) * (p * (j.dl2 + j.l1 * j.l3) + 2 * lk * j.l2) +
         (lk * lk + q * q) * (j.l1 * j.l1 + j.l2 * j.l2) + e * e;
}

std::vector<double> h_diagnostic(std::span<const RegularFramedJet> j, double lambda) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(h_diagnostic(v, lambda));
  return out;
}

double regular_framed_mate_k1(const RegularFramedJet& j, double lambda) {
  // Coordinates in the orthonormal frame (t, n1, nu2, nu3).
  const double p = 1.0 - lambda * j.k1;
  const Vec4 c1{p, 0.0, lambda * j.l1, lambda * j.l2};
  const Vec4 c2{-lambda * j.dk1, p * j.k1 - lambda * (j.l1 * j.l1 + j.l2 * j.l2),
                lambda * (j.dl1 - j.l2 * j.l3), lambda * (j.dl2 + j.l1 * j.l3)};
  const double s = norm(c1);
  const double g = std::max(0.0, dot(c1, c1) * dot(c2, c2) - dot(c1, c2) * dot(c1, c2));
  return std::sqrt(g) / (s * s * s);
}

RegularFramedBertrand check_bertrand_regular_framed(std::span<const RegularFramedJet> j, double lambda,
                                                    double tol) {
  require_lambda(lambda);
  std::vector<FramedCurvature> curv;
  curv.reserve(j.size());
  for (const auto& v : j) {
    if (!(v.k1 > 0.0)) throw Error(ErrorCode::NonPositiveCurvature, "kappa1 must be positive");
    curv.push_back(as_septuple(v));
  }
  RegularFramedBertrand out;
  out.params = bertrand_angles(curv, lambda);
  out.report = check_bertrand_framed(curv, out.params, tol);
  out.h = h_diagnostic(j, lambda);
  double hmin = j.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < j.size(); ++i) {
    hmin = std::min(hmin, out.h[i]);
    const double p = 1.0 - lambda * j[i].k1;
    const double den = std::sqrt(p * p + j[i].l1 * j[i].l1 + j[i].l2 * j[i].l2);
    out.k1bar.push_back(std::sqrt(std::max(0.0, out.h[i])) / den);
    out.k1bar_direct.push_back(regular_framed_mate_k1(j[i], lambda));
  }
  out.report.details["h_min"] = hmin;
  out.report.verdict = verdict_of(out.report.passed() && hmin > tol);
  return out;
}

}  // namespace mate4
