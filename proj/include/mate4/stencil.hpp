#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mate4/error.hpp"

namespace mate4 {

// Central stencils of order-4 accuracy: 5 points for d1/d2, 7 points for d3/d4.
// Returns coefficients for offsets -half..half.
std::span<const double> central_stencil(int order);
int stencil_half_width(int order);

// Derivative of samples f at index i with spacing h.
template <class V>
V central_derivative(std::span<const V> f, std::size_t i, int order, double h) {
  const int hw = stencil_half_width(order);
  const auto w = central_stencil(order);
  V acc = f[i] * 0.0;
  for (int k = -hw; k <= hw; ++k) {
    const double c = w[k + hw];
    if (c != 0.0) acc += f[i + k] * c;
  }
  double scale = 1.0;
  for (int k = 0; k < order; ++k) scale *= h;
  return acc * (1.0 / scale);
}

// First derivative of a uniform table at every node: central 5-point inside,
// one-sided 5-point (still order 4) at the two nodes nearest each end.
template <class V>
std::vector<V> differentiate_table(std::span<const V> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw Error(ErrorCode::InsufficientSamples, "need at least 5 samples to differentiate");
  std::vector<V> d(n, f[0] * 0.0);
  const double s = 1.0 / (12.0 * h);
  auto at = [&](std::size_t i) { return f[i]; };
  d[0] = (at(0) * -25.0 + at(1) * 48.0 + at(2) * -36.0 + at(3) * 16.0 + at(4) * -3.0) * s;
  d[1] = (at(0) * -3.0 + at(1) * -10.0 + at(2) * 18.0 + at(3) * -6.0 + at(4) * 1.0) * s;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (at(i - 2) + at(i - 1) * -8.0 + at(i + 1) * 8.0 + at(i + 2) * -1.0) * s;
  }
  const std::size_t m = n - 1;
  d[m] = (at(m) * 25.0 + at(m - 1) * -48.0 + at(m - 2) * 36.0 + at(m - 3) * -16.0 + at(m - 4) * 3.0) * s;
  d[m - 1] = (at(m) * 3.0 + at(m - 1) * 10.0 + at(m - 2) * -18.0 + at(m - 3) * 6.0 + at(m - 4) * -1.0) * s;
  return d;
}

}  // namespace mate4
