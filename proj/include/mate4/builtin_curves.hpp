#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mate4/framed.hpp"
#include "mate4/frenet.hpp"
#include "mate4/mates.hpp"

namespace mate4 {

// gamma, nu1, nu2, nu3 as closed-form functions of the parameter.
using TaylorFramed = std::function<std::array<TVec4, 4>(const Tay&)>;

FramedCurvePoint framed_point(const TaylorFramed& fc, double t);
std::vector<FramedCurvePoint> framed_points(const TaylorFramed& fc, const Grid& grid);
std::vector<FramedNode> framed_nodes(const TaylorFramed& fc, const Grid& grid);

namespace example38 {

// gamma(t) = (t sin t + cos t, -t cos t + sin t, t sin 2t + cos 2t / 2, -t cos 2t + sin 2t / 2)
TaylorFramed framed();
TaylorCurve curve();
FramedCurvature curvature(double t);
// Closed-form mate for lambda = -sqrt5, psi = 0, theta = atan2(2, sqrt5 t + 1).
Vec4 mate_gamma(double t);
Vec4 mate_nu3(double t);
double mate_theta(double t);

}  // namespace example38

namespace torus {

// gamma(s) = (cos as / a, sin as / a, cos bs / b, sin bs / b) / sqrt2, unit speed.
TaylorCurve curve(double a, double b);
// Framed curve (gamma, n1, nu2, nu3) with nu2 = (-sin as, cos as, sin bs, -cos bs) / sqrt2.
TaylorFramed framed(double a, double b);
// (l1, l2, kappa1, l3, 0, 0, -1) in closed form.
FramedCurvature curvature(double a, double b);

}  // namespace torus

// Curvature data of a framed curve built from a regular curve in arc length
// (frame n1, nu2, nu3), with first derivatives of l1, l2, kappa1, l3 obtained
// by finite differences of the node curvature.
std::vector<RegularFramedJet> regular_framed_jets(std::span<const FramedCurvature> curv, double step);

// Frenet curvatures and arc-length derivatives of a unit-speed closed-form curve.
// Derivatives come from Taylor arithmetic; needs the curve to be non-degenerate.
KappaJet kappa_jet(const TaylorCurve& fn, double s);

}  // namespace mate4
