#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace mate4 {

// Point or vector in R^4, components x1..x4 stored as x[0..3].
struct Vec4 {
  std::array<double, 4> x{};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double x2, double x3, double x4) : x{x1, x2, x3, x4} {}

  constexpr double& operator[](std::size_t i) { return x[i]; }
  constexpr double operator[](std::size_t i) const { return x[i]; }

  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) x[i] += o.x[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) x[i] -= o.x[i];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (auto& v : x) v *= s;
    return *this;
  }
};

inline Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
inline Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
inline Vec4 operator*(Vec4 a, double s) { return a *= s; }
inline Vec4 operator*(double s, Vec4 a) { return a *= s; }
inline Vec4 operator/(Vec4 a, double s) { return a *= 1.0 / s; }
inline Vec4 operator-(Vec4 a) { return a *= -1.0; }

constexpr Vec4 basis(int i) {
  Vec4 e;
  e.x[i] = 1.0;
  return e;
}

double dot(const Vec4& a, const Vec4& b);
double norm(const Vec4& a);
double max_abs(const Vec4& a);

// Ternary vector product: the formal determinant with rows (e1 e2 e3 e4; a; b; c).
// With the basis row first, e1 x e2 x e3 = -e4 and e4 x e1 x e2 = e3.
Vec4 triple_product(const Vec4& a, const Vec4& b, const Vec4& c);

// det4(a,b,c,d) = dot(triple_product(a,b,c), d). Note this is minus the
// determinant of the matrix with rows a,b,c,d.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

struct OrthoTriple {
  Vec4 nu1, nu2, nu3;
};

// Largest deviation of {v_i} from orthonormality (|v_i|-1 and v_i.v_j).
double orthonormality_defect(const OrthoTriple& t);

struct MovingFrame {
  OrthoTriple triple;
  Vec4 mu;

  static MovingFrame from_triple(const OrthoTriple& t);
  static MovingFrame from_vectors(const Vec4& nu1, const Vec4& nu2, const Vec4& nu3) {
    return from_triple({nu1, nu2, nu3});
  }

  const Vec4& nu(int i) const;  // i in 1..3
};

// Defect of a full frame: orthonormality of {nu1,nu2,nu3,mu} and mu vs nu1 x nu2 x nu3.
double frame_defect(const MovingFrame& f);

// Modified Gram-Schmidt in order nu1 -> nu2 -> nu3.
// Throws DegenerateFrame when the Gram determinant falls below 1e-12.
OrthoTriple repair_frame(const Vec4& nu1, const Vec4& nu2, const Vec4& nu3);

}  // namespace mate4
