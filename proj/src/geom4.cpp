#include "mate4/geom4.hpp"

#include <algorithm>

#include "mate4/error.hpp"

namespace mate4 {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotArcLength: return "NotArcLength";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::ThetaDegenerate: return "ThetaDegenerate";
    case ErrorCode::InvalidInitialFrame: return "InvalidInitialFrame";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::JointlyDegenerate: return "JointlyDegenerate";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vec4& a) {
  double m = 0.0;
  for (double v : a.x) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// 3x3 determinant of rows a,b,c with column `skip` removed.
double minor3(const Vec4& a, const Vec4& b, const Vec4& c, int skip) {
  int k[3];
  for (int i = 0, j = 0; i < 4; ++i) {
    if (i != skip) k[j++] = i;
  }
  return a[k[0]] * (b[k[1]] * c[k[2]] - b[k[2]] * c[k[1]]) -
         a[k[1]] * (b[k[0]] * c[k[2]] - b[k[2]] * c[k[0]]) +
         a[k[2]] * (b[k[0]] * c[k[1]] - b[k[1]] * c[k[0]]);
}

}  // namespace

Vec4 triple_product(const Vec4& a, const Vec4& b, const Vec4& c) {
  return {minor3(a, b, c, 0), -minor3(a, b, c, 1), minor3(a, b, c, 2), -minor3(a, b, c, 3)};
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  return dot(triple_product(a, b, c), d);
}

double orthonormality_defect(const OrthoTriple& t) {
  const Vec4* v[3] = {&t.nu1, &t.nu2, &t.nu3};
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    m = std::max(m, std::abs(norm(*v[i]) - 1.0));
    for (int j = i + 1; j < 3; ++j) m = std::max(m, std::abs(dot(*v[i], *v[j])));
  }
  return m;
}

MovingFrame MovingFrame::from_triple(const OrthoTriple& t) {
  return {t, triple_product(t.nu1, t.nu2, t.nu3)};
}

const Vec4& MovingFrame::nu(int i) const {
  switch (i) {
    case 1: return triple.nu1;
    case 2: return triple.nu2;
    case 3: return triple.nu3;
  }
  throw Error(ErrorCode::InvalidInput, "frame index must be 1..3");
}

double frame_defect(const MovingFrame& f) {
  double m = orthonormality_defect(f.triple);
  m = std::max(m, std::abs(norm(f.mu) - 1.0));
  for (int i = 1; i <= 3; ++i) m = std::max(m, std::abs(dot(f.nu(i), f.mu)));
  return std::max(m, max_abs(f.mu - triple_product(f.triple.nu1, f.triple.nu2, f.triple.nu3)));
}

OrthoTriple repair_frame(const Vec4& nu1, const Vec4& nu2, const Vec4& nu3) {
  const double scale = norm(nu1) * norm(nu2) * norm(nu3);
  Vec4 u1 = nu1;
  const double n1 = norm(u1);
  Vec4 u2 = nu2;
  Vec4 u3 = nu3;
  if (n1 == 0.0) throw Error(ErrorCode::DegenerateFrame, "nu1 vanishes");
  u1 = u1 / n1;
  u2 -= dot(u2, u1) * u1;
  const double n2 = norm(u2);
  u3 -= dot(u3, u1) * u1;
  // Product of the Gram-Schmidt norms is sqrt(det Gram); compare relative to the input scale.
  if (n2 == 0.0) throw Error(ErrorCode::DegenerateFrame, "nu2 is parallel to nu1");
  u2 = u2 / n2;
  u3 -= dot(u3, u2) * u2;
  const double n3 = norm(u3);
  const double gram = (n1 * n2 * n3) * (n1 * n2 * n3);
  if (gram <= 1e-12 * scale * scale) {
    throw Error(ErrorCode::DegenerateFrame, "Gram matrix is singular");
  }
  u3 = u3 / n3;
  return {u1, u2, u3};
}

}  // namespace mate4
