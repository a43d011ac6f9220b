#include "mate4/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "mate4/error.hpp"

namespace mate4 {

namespace {

struct State {
  Vec4 g, n1, n2, n3, mu;
};

State axpy(const State& s, const State& d, double h) {
  return {s.g + h * d.g, s.n1 + h * d.n1, s.n2 + h * d.n2, s.n3 + h * d.n3, s.mu + h * d.mu};
}

State derivative(const FramedCurvature& k, const State& s) {
  return {k.alpha * s.mu,
          k.l1 * s.n2 + k.l2 * s.n3 + k.l3 * s.mu,
          -k.l1 * s.n1 + k.l4 * s.n3 + k.l5 * s.mu,
          -k.l2 * s.n1 - k.l4 * s.n2 + k.l6 * s.mu,
          -k.l3 * s.n1 - k.l5 * s.n2 - k.l6 * s.n3};
}

}  // namespace

std::vector<FramedNode> integrate_framed(const CurvatureSpec& spec, const Vec4& gamma0,
                                         const MovingFrame& frame0, double t0, double t1,
                                         const IntegrationConfig& cfg) {
  if (!(cfg.step > 0.0) || cfg.reortho_every < 1) throw Error(ErrorCode::InvalidInput, "invalid integration config");
  if (!(t1 > t0)) throw Error(ErrorCode::InvalidInput, "need t1 > t0");
  if (frame_defect(frame0) > 1e-10) throw Error(ErrorCode::InvalidInitialFrame, "initial frame is not a valid moving frame");

  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / cfg.step));
  if (steps == 0) throw Error(ErrorCode::InvalidInput, "interval shorter than one step");
  const double h = (t1 - t0) / static_cast<double>(steps);

  std::vector<FramedNode> out;
  out.reserve(steps + 1);
  State s{gamma0, frame0.triple.nu1, frame0.triple.nu2, frame0.triple.nu3, frame0.mu};
  out.push_back({t0, s.g, {{s.n1, s.n2, s.n3}, s.mu}});
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    const State k1 = derivative(spec(t), s);
    const FramedCurvature mid = spec(t + 0.5 * h);
    const State k2 = derivative(mid, axpy(s, k1, 0.5 * h));
    const State k3 = derivative(mid, axpy(s, k2, 0.5 * h));
    const State k4 = derivative(spec(t + h), axpy(s, k3, h));
    s = axpy(s, k1, h / 6.0);
    s = axpy(s, k2, h / 3.0);
    s = axpy(s, k3, h / 3.0);
    s = axpy(s, k4, h / 6.0);
    if ((i + 1) % static_cast<std::size_t>(cfg.reortho_every) == 0) {
      const OrthoTriple r = repair_frame(s.n1, s.n2, s.n3);
      s.n1 = r.nu1;
      s.n2 = r.nu2;
      s.n3 = r.nu3;
      s.mu = triple_product(r.nu1, r.nu2, r.nu3);
    }
    const double tn = (i + 1 == steps) ? t1 : t0 + h * static_cast<double>(i + 1);
    out.push_back({tn, s.g, {{s.n1, s.n2, s.n3}, s.mu}});
  }
  return out;
}

Mat4 Mat4::identity() {
  Mat4 r;
  for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
  return r;
}

Vec4 Mat4::operator*(const Vec4& v) const {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
  return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  }
  return r;
}

Mat4 Mat4::transpose() const {
  Mat4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
  }
  return r;
}

double Mat4::det() const {
  // det of rows r0..r3 = -det4(r0, r1, r2, r3) with the basis-first triple product.
  Vec4 r[4];
  for (int i = 0; i < 4; ++i) r[i] = {m[i][0], m[i][1], m[i][2], m[i][3]};
  return -det4(r[0], r[1], r[2], r[3]);
}

FramedNode transform_node(const FramedNode& n, const Mat4& a, const Vec4& shift) {
  return {n.t, a * n.gamma + shift,
          {{a * n.frame.triple.nu1, a * n.frame.triple.nu2, a * n.frame.triple.nu3}, a * n.frame.mu}};
}

namespace {

// Columns nu1, nu2, nu3, mu.
Mat4 frame_matrix(const MovingFrame& f) {
  Mat4 r;
  const Vec4* c[4] = {&f.triple.nu1, &f.triple.nu2, &f.triple.nu3, &f.mu};
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) r.m[i][j] = (*c[j])[i];
  }
  return r;
}

}  // namespace

std::optional<CongruenceResult> congruence_check(std::span<const FramedNode> fc1,
                                                 std::span<const FramedNode> fc2, double tol) {
  if (fc1.size() != fc2.size() || fc1.empty()) throw Error(ErrorCode::GridMismatch, "curves have different node counts");
  const double h = uniform_step(fc1);
  for (std::size_t i = 0; i < fc1.size(); ++i) {
    if (std::abs(fc1[i].t - fc2[i].t) > 1e-9 * std::max(1.0, h)) {
      throw Error(ErrorCode::GridMismatch, "curves are sampled on different grids");
    }
  }
  const auto k1 = framed_curvature(differentiate_nodes(fc1));
  const auto k2 = framed_curvature(differentiate_nodes(fc2));
  CongruenceResult r;
  for (std::size_t i = 0; i < k1.size(); ++i) r.curvature_gap = std::max(r.curvature_gap, max_abs_diff(k1[i], k2[i]));
  if (r.curvature_gap > tol) return std::nullopt;

  r.rotation = frame_matrix(fc2.front().frame) * frame_matrix(fc1.front().frame).transpose();
  if (r.rotation.det() < 0.0) return std::nullopt;
  r.translation = fc2.front().gamma - r.rotation * fc1.front().gamma;
  for (std::size_t i = 0; i < fc1.size(); ++i) {
    const FramedNode moved = transform_node(fc1[i], r.rotation, r.translation);
    double e = max_abs(moved.gamma - fc2[i].gamma);
    for (int k = 1; k <= 3; ++k) e = std::max(e, max_abs(moved.frame.nu(k) - fc2[i].frame.nu(k)));
    e = std::max(e, max_abs(moved.frame.mu - fc2[i].frame.mu));
    r.residual = std::max(r.residual, e);
  }
  if (r.residual > tol) return std::nullopt;
  return r;
}

CurvatureSpec extract_curvature(std::span<const FramedNode> nodes) {
  const double h = uniform_step(nodes);
  return CurvatureSpec::from_table(nodes.front().t, h, framed_curvature(differentiate_nodes(nodes)));
}

}  // namespace mate4
