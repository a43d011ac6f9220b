#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mate4/framed.hpp"
#include "mate4/frenet.hpp"

namespace mate4 {

enum class Verdict { pass, fail };

struct ConditionReport {
  Verdict verdict = Verdict::fail;
  double residual_sup = 0.0;
  std::map<std::string, double> details;

  bool passed() const { return verdict == Verdict::pass; }
};

// Curvatures of a regular curve with arc-length derivatives: k1[0] = kappa1,
// k1[1] = kappa1', ... up to the third derivative.
struct KappaJet {
  std::array<double, 4> k1{}, k2{}, k3{};
};

struct MateCurvatureTriple {
  double k1bar = 0.0, k2bar = 0.0, k3bar = 0.0;
  double g1 = 0.0, g2 = 0.0;
};

// Fails (obstruction present) iff some |kappa3| exceeds tol.
ConditionReport regular_bertrand_obstruction(std::span<const double> k3, double tol = 1e-8);

struct SecondMateAux {
  double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0;
};

SecondMateAux second_mate_aux(const KappaJet& k, double lambda);
double second_mate_k1bar(const KappaJet& k, double lambda);

ConditionReport check_second_mannheim_regular(std::span<const KappaJet> k, double lambda,
                                              double tol = 1e-8);
MateCurvatureTriple second_mate_curvature(const KappaJet& k, double lambda);

ConditionReport check_third_mannheim_regular(std::span<const KappaJet> k, double lambda,
                                             double tol = 1e-8);
std::vector<MateCurvatureTriple> third_mate_curvature(double k1, double k2, std::span<const double> k3,
                                                      double lambda);

struct MateParams {
  double lambda = 0.0;
  std::vector<double> psi, theta, phi;
};

struct AngleRates {
  std::vector<double> dpsi, dtheta, dphi;
};

// Canonical continuous solution of the framed Bertrand conditions, phi = 0.
MateParams bertrand_angles(std::span<const FramedCurvature> curv, double lambda);

// theta solving the second condition for a caller-chosen psi.
std::vector<double> bertrand_theta(std::span<const FramedCurvature> curv, double lambda,
                                   std::span<const double> psi);

// Residuals of both conditions for caller-supplied parameters (details cond1, cond2).
ConditionReport check_bertrand_framed(std::span<const FramedCurvature> curv, const MateParams& params,
                                      double tol = 1e-8);

AngleRates angle_rates(const MateParams& params, double step);

// gamma + lambda nu1 with the rotated frame. Throws ConditionViolated when the
// parameters miss the conditions by more than tol.
std::vector<FramedNode> construct_bertrand_mate(std::span<const FramedNode> fc,
                                                std::span<const FramedCurvature> curv,
                                                const MateParams& params, double tol = 1e-8);
// Same, with curvature extracted from fc by finite differences.
std::vector<FramedNode> construct_bertrand_mate(std::span<const FramedNode> fc, const MateParams& params,
                                                double tol = 1e-5);

std::vector<FramedCurvature> mate_curvature(std::span<const FramedCurvature> curv, const MateParams& params,
                                            const AngleRates& rates, double tol = 1e-8);

enum class MannheimKind { second, third };

// second: (nu3bar, nu1bar, nu2bar); third: (nu2bar, nu3bar, nu1bar).
std::vector<FramedNode> mannheim_permute(std::span<const FramedNode> mate, MannheimKind kind);

struct OffsetProfile {
  std::vector<double> lambda;  // (gammabar - gamma) . nu1
  double lambda_spread = 0.0;  // max - min
  double normal_residual = 0.0;
};

OffsetProfile offset_profile(std::span<const FramedNode> base, std::span<const FramedNode> mate);

struct SignMatch {
  int sign = 1;
  double residual = 0.0;
};

// Best sign s with a_i = s b_i, and the sup residual for that sign.
SignMatch match_up_to_sign(std::span<const Vec4> a, std::span<const Vec4> b);

// gamma + lambda n1 as a closed-form curve.
TaylorCurve normal_offset(TaylorCurve base, double lambda);

// Data of a framed curve with curvature (l1, l2, kappa1, l3, 0, 0, -1) in arc length.
struct RegularFramedJet {
  double l1 = 0.0, l2 = 0.0, k1 = 0.0, l3 = 0.0;
  double dl1 = 0.0, dl2 = 0.0, dk1 = 0.0, dl3 = 0.0;
};

double h_diagnostic(const RegularFramedJet& j, double lambda);
std::vector<double> h_diagnostic(std::span<const RegularFramedJet> j, double lambda);

// First curvature of gamma + lambda n1 from its Gram determinant.
double regular_framed_mate_k1(const RegularFramedJet& j, double lambda);

struct RegularFramedBertrand {
  ConditionReport report;
  MateParams params;
  std::vector<double> h;
  std::vector<double> k1bar;         // sqrt(h) / sqrt((1 - lambda k1)^2 + l1^2 + l2^2)
  std::vector<double> k1bar_direct;  // regular_framed_mate_k1
};

RegularFramedBertrand check_bertrand_regular_framed(std::span<const RegularFramedJet> j, double lambda,
                                                    double tol = 1e-8);

FramedCurvature as_septuple(const RegularFramedJet& j);

}  // namespace mate4
