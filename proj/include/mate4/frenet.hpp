#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mate4/geom4.hpp"
#include "mate4/taylor.hpp"

namespace mate4 {

struct CurveJet {
  double t = 0.0;
  std::array<Vec4, 5> d{};  // gamma and its first four derivatives
};

// Closed-form curve evaluated on Taylor numbers, giving exact jets.
using TaylorCurve = std::function<TVec4(const Tay&)>;

class CurveSource {
 public:
  using JetFn = std::function<CurveJet(double t, int order)>;

  static CurveSource analytic(JetFn fn, double t_min, double t_max);
  static CurveSource from_taylor(TaylorCurve fn, double t_min, double t_max);
  // Positions at t0 + i*step, i = 0..n-1. Needs n >= 9.
  static CurveSource sampled(double t0, double step, std::vector<Vec4> positions);

  bool is_sampled() const { return sampled_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double step() const { return step_; }
  const std::vector<Vec4>& positions() const { return positions_; }

  CurveJet jet(double t, int order) const;

 private:
  bool sampled_ = false;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  double step_ = 0.0;
  JetFn fn_;
  std::vector<Vec4> positions_;
};

// order in 1..4. Sampled sources accept grid nodes only.
CurveJet jet(const CurveSource& source, double t, int order);

// Exact jet of a Taylor curve at t.
CurveJet taylor_jet(const TaylorCurve& fn, double t, int order = 4);

struct FrenetApparatus {
  Vec4 tangent, n1, n2, n3;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
};

FrenetApparatus frenet_arclength(const CurveJet& jet);
FrenetApparatus frenet_general(const CurveJet& jet);

struct ArcLengthTable {
  std::vector<double> t;
  std::vector<double> s;
};

// s(t) by Simpson's rule on each of n subintervals (uses subinterval midpoints).
ArcLengthTable arclength_table(const CurveSource& source, double t0, double t1, int n);

}  // namespace mate4
