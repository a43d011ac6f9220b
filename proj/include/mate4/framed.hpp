#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "mate4/geom4.hpp"

namespace mate4 {

// Uniform grid t0, t0+step, ..., count nodes.
struct Grid {
  double t0 = 0.0;
  double step = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return t0 + step * static_cast<double>(i); }
  double t_end() const { return at(count - 1); }
  // count nodes spanning [t0, t1] inclusive.
  static Grid spanning(double t0, double t1, std::size_t count);
};

struct FramedNode {
  double t = 0.0;
  Vec4 gamma;
  MovingFrame frame;
};

struct FramedCurvePoint {
  double t = 0.0;
  Vec4 gamma;
  MovingFrame frame;
  Vec4 dgamma;
  std::array<Vec4, 3> dnu{};  // derivatives of nu1, nu2, nu3
};

struct FramedCurvature {
  double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0, l5 = 0.0, l6 = 0.0, alpha = 0.0;

  std::array<double, 7> values() const { return {l1, l2, l3, l4, l5, l6, alpha}; }
  static FramedCurvature from_values(const std::array<double, 7>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
  }
};

double max_abs_diff(const FramedCurvature& a, const FramedCurvature& b);

struct FramedCheck {
  double tangency_sup = 0.0;  // sup |dgamma . nu_i|
  double frame_sup = 0.0;     // sup frame defect
  bool pass = false;
};

FramedCheck check_framed(std::span<const FramedCurvePoint> points, double tol);

FramedCurvature framed_curvature(const FramedCurvePoint& p);
std::vector<FramedCurvature> framed_curvature(std::span<const FramedCurvePoint> points);

// Sup residual of the structure equations
// nu1' = l1 nu2 + l2 nu3 + l3 mu, ..., gamma' = alpha mu at one point.
double structure_residual(const FramedCurvePoint& p, const FramedCurvature& k);

// Finite-difference derivatives for nodes on a uniform grid (order-4 stencils,
// one-sided near the ends). Throws GridMismatch if the spacing is not uniform.
std::vector<FramedCurvePoint> differentiate_nodes(std::span<const FramedNode> nodes);
double uniform_step(std::span<const FramedNode> nodes);

struct EulerAngles {
  double phi = 0.0, psi = 0.0, theta = 0.0;
};

struct EulerRates {
  double dphi = 0.0, dpsi = 0.0, dtheta = 0.0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 rotation_matrix(const EulerAngles& a);

// New triple A (nu1, nu2, nu3); mu is kept as is.
MovingFrame rotate_frame(const MovingFrame& f, const EulerAngles& a);

FramedCurvature transformed_curvature(const FramedCurvature& k, const EulerAngles& a,
                                      const EulerRates& r);

// Seven curvature functions on [t_min, t_max], either a closure or a uniform
// table read back by 4-point Lagrange (cubic) interpolation.
class CurvatureSpec {
 public:
  using Fn = std::function<FramedCurvature(double)>;

  static CurvatureSpec from_function(Fn fn, double t_min, double t_max);
  static CurvatureSpec from_table(double t0, double step, std::vector<FramedCurvature> table);

  FramedCurvature operator()(double t) const;
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

 private:
  Fn fn_;
  double t_min_ = 0.0, t_max_ = 0.0, step_ = 0.0;
  std::vector<FramedCurvature> table_;
};

// Right-hand side of the adapted-frame ODE.
EulerRates adapted_rates(const FramedCurvature& k, const EulerAngles& a);

struct AdaptedFrame {
  std::vector<double> t;
  std::vector<EulerAngles> angles;
  std::vector<EulerRates> rates;
  std::vector<FramedCurvature> curvature;
};

// RK4 for (phi, psi, theta) so that the rotated frame has l1 = l2 = l4 = 0.
// Throws ThetaDegenerate when |sin theta| drops below theta_min.
AdaptedFrame adapted_frame(const CurvatureSpec& spec, const Grid& grid,
                           EulerAngles initial = {0.0, 0.0, std::numbers::pi / 2},
                           double theta_min = 1e-3);

}  // namespace mate4
