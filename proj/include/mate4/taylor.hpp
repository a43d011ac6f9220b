#pragma once

#include <array>
#include <cmath>

namespace mate4 {

// Truncated Taylor series c[0] + c[1] e + ... + c[N] e^N, e the parameter offset.
// Used to obtain exact derivative jets of closed-form curves.
template <int N>
struct Taylor {
  std::array<double, N + 1> c{};

  Taylor() = default;
  Taylor(double v) { c[0] = v; }  // NOLINT: implicit lift of constants

  static Taylor variable(double t) {
    Taylor r(t);
    if constexpr (N >= 1) r.c[1] = 1.0;
    return r;
  }

  // k-th derivative at the expansion point.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  Taylor& operator+=(const Taylor& o) {
    for (int i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (int i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Taylor& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

template <int N> Taylor<N> operator+(Taylor<N> a, const Taylor<N>& b) { return a += b; }
template <int N> Taylor<N> operator-(Taylor<N> a, const Taylor<N>& b) { return a -= b; }
template <int N> Taylor<N> operator-(Taylor<N> a) { return a *= -1.0; }
template <int N> Taylor<N> operator*(Taylor<N> a, double s) { return a *= s; }
template <int N> Taylor<N> operator*(double s, Taylor<N> a) { return a *= s; }
template <int N> Taylor<N> operator+(Taylor<N> a, double s) { a.c[0] += s; return a; }
template <int N> Taylor<N> operator+(double s, Taylor<N> a) { a.c[0] += s; return a; }
template <int N> Taylor<N> operator-(Taylor<N> a, double s) { a.c[0] -= s; return a; }
template <int N> Taylor<N> operator-(double s, const Taylor<N>& a) { return -a + s; }
template <int N> Taylor<N> operator/(Taylor<N> a, double s) { return a *= 1.0 / s; }

template <int N>
Taylor<N> operator*(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> r;
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    r.c[k] = s;
  }
  return r;
}

template <int N>
Taylor<N> operator/(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> q;
  for (int k = 0; k <= N; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
    q.c[k] = s / b.c[0];
  }
  return q;
}

template <int N>
Taylor<N> operator/(double s, const Taylor<N>& b) {
  return Taylor<N>(s) / b;
}

template <int N>
Taylor<N> sqrt(const Taylor<N>& a) {
  Taylor<N> r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double s = a.c[k];
    for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
    r.c[k] = s / (2.0 * r.c[0]);
  }
  return r;
}

template <int N>
void sincos(const Taylor<N>& u, Taylor<N>& s, Taylor<N>& co) {
  s = Taylor<N>();
  co = Taylor<N>();
  s.c[0] = std::sin(u.c[0]);
  co.c[0] = std::cos(u.c[0]);
  for (int k = 1; k <= N; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * u.c[j] * co.c[k - j];
      cc -= j * u.c[j] * s.c[k - j];
    }
    s.c[k] = ss / k;
    co.c[k] = cc / k;
  }
}

template <int N>
Taylor<N> sin(const Taylor<N>& u) {
  Taylor<N> s, c;
  sincos(u, s, c);
  return s;
}

template <int N>
Taylor<N> cos(const Taylor<N>& u) {
  Taylor<N> s, c;
  sincos(u, s, c);
  return c;
}

// Derivative with respect to the parameter; the top coefficient is lost.
template <int N>
Taylor<N> differentiate(const Taylor<N>& a) {
  Taylor<N> r;
  for (int k = 0; k < N; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

inline constexpr int kTaylorDegree = 10;
using Tay = Taylor<kTaylorDegree>;
using TVec4 = std::array<Tay, 4>;

inline TVec4 operator+(const TVec4& a, const TVec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline TVec4 operator-(const TVec4& a, const TVec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline TVec4 operator*(const Tay& s, const TVec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline TVec4 operator*(double s, const TVec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline Tay tdot(const TVec4& a, const TVec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline TVec4 tdiff(const TVec4& a) {
  return {differentiate(a[0]), differentiate(a[1]), differentiate(a[2]), differentiate(a[3])};
}

}  // namespace mate4
