#include "mate4/stencil.hpp"

#include <array>

namespace mate4 {

namespace {

constexpr std::array<double, 5> kD1 = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
constexpr std::array<double, 5> kD2 = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
constexpr std::array<double, 7> kD3 = {1.0 / 8, -1.0, 13.0 / 8, 0.0, -13.0 / 8, 1.0, -1.0 / 8};
constexpr std::array<double, 7> kD4 = {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6};

}  // namespace

std::span<const double> central_stencil(int order) {
  switch (order) {
    case 1: return kD1;
    case 2: return kD2;
    case 3: return kD3;
    case 4: return kD4;
  }
  throw Error(ErrorCode::InvalidInput, "derivative order must be 1..4");
}

int stencil_half_width(int order) {
  if (order < 1 || order > 4) throw Error(ErrorCode::InvalidInput, "derivative order must be 1..4");
  return order <= 2 ? 2 : 3;
}

}  // namespace mate4
