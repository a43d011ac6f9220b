#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mate4/framed.hpp"

namespace mate4 {

struct IntegrationConfig {
  double step = 1e-3;
  int reortho_every = 10;
};

// Integrates the structure equations and gamma' = alpha mu with fixed-step RK4
// from (gamma0, frame0) at t0 over [t0, t1]. The frame is repaired every
// reortho_every steps and mu recomputed from the repaired triple.
std::vector<FramedNode> integrate_framed(const CurvatureSpec& spec, const Vec4& gamma0,
                                         const MovingFrame& frame0, double t0, double t1,
                                         const IntegrationConfig& cfg = {});

struct Mat4 {
  std::array<std::array<double, 4>, 4> m{};

  static Mat4 identity();
  Vec4 operator*(const Vec4& v) const;
  Mat4 operator*(const Mat4& o) const;
  Mat4 transpose() const;
  double det() const;
};

struct CongruenceResult {
  Mat4 rotation;
  Vec4 translation;
  double residual = 0.0;
  double curvature_gap = 0.0;
};

// Returns the rigid motion (A, a) with fc2 = A fc1 + a if the curvatures agree
// within tol and the alignment holds along the whole grid; otherwise nothing.
std::optional<CongruenceResult> congruence_check(std::span<const FramedNode> fc1,
                                                 std::span<const FramedNode> fc2, double tol);

// Curvature table of a sampled framed curve (finite differences), ready to feed
// back into integrate_framed.
CurvatureSpec extract_curvature(std::span<const FramedNode> nodes);

FramedNode transform_node(const FramedNode& n, const Mat4& a, const Vec4& shift);

}  // namespace mate4
