#pragma once

#include <array>
#include <cmath>
#include <type_traits>

namespace planefold {

// Forward-mode dual number carrying N first-order partials; nest the scalar
// type to reach higher derivative orders (Dual<Dual<double,3>,3> gives exact
// mixed second partials, and so on).
template <class T, int N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT: implicit promotion of constants

  static Dual constant(const T& value) {
    Dual r;
    r.v = value;
    return r;
  }
};

// innermost double of a (possibly nested) dual
inline double value_of(double x) { return x; }
template <class T, int N>
double value_of(const Dual<T, N>& x) { return value_of(x.v); }

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T, int N>
bool all_finite(const Dual<T, N>& x) {
  if (!all_finite(x.v)) return false;
  for (const auto& p : x.d)
    if (!all_finite(p)) return false;
  return true;
}

// ---- arithmetic ----

template <class T, int N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> operator+(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v + b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> operator+(const Dual<T, N>& a, double c) {
  Dual<T, N> r = a;
  r.v = a.v + c;
  return r;
}
template <class T, int N>
Dual<T, N> operator+(double c, const Dual<T, N>& a) { return a + c; }

template <class T, int N>
Dual<T, N> operator-(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v - b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> operator-(const Dual<T, N>& a, double c) {
  Dual<T, N> r = a;
  r.v = a.v - c;
  return r;
}
template <class T, int N>
Dual<T, N> operator-(double c, const Dual<T, N>& a) {
  Dual<T, N> r = -a;
  r.v = c - a.v;
  return r;
}

template <class T, int N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <class T, int N>
Dual<T, N> operator*(const Dual<T, N>& a, double c) {
  Dual<T, N> r;
  r.v = a.v * c;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * c;
  return r;
}
template <class T, int N>
Dual<T, N> operator*(double c, const Dual<T, N>& a) { return a * c; }

template <class T, int N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  return r;
}
template <class T, int N>
Dual<T, N> operator/(const Dual<T, N>& a, double c) { return a * (1.0 / c); }
template <class T, int N>
Dual<T, N> operator/(double c, const Dual<T, N>& a) { return Dual<T, N>(c) / a; }

template <class T, int N>
Dual<T, N>& operator+=(Dual<T, N>& a, const Dual<T, N>& b) { a = a + b; return a; }
template <class T, int N>
Dual<T, N>& operator-=(Dual<T, N>& a, const Dual<T, N>& b) { a = a - b; return a; }
template <class T, int N>
Dual<T, N>& operator*=(Dual<T, N>& a, const Dual<T, N>& b) { a = a * b; return a; }

// ---- elementary functions (recursive through nesting via unqualified calls) ----

using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T, int N>
Dual<T, N> sin(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = sin(a.v);
  T c = cos(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = c * a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> cos(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = cos(a.v);
  T s = sin(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = -(s * a.d[i]);
  return r;
}

template <class T, int N>
Dual<T, N> tan(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = tan(a.v);
  T f = 1.0 + r.v * r.v;  // sec^2
  for (int i = 0; i < N; ++i) r.d[i] = f * a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> exp(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = exp(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = r.v * a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> log(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = log(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / a.v;
  return r;
}

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = sqrt(a.v);
  T f = 0.5 / r.v;
  for (int i = 0; i < N; ++i) r.d[i] = f * a.d[i];
  return r;
}

// power with a constant exponent; valid for negative bases with integer n
template <class T, int N>
Dual<T, N> pow(const Dual<T, N>& a, double n) {
  if (n == 0.0) return Dual<T, N>(1.0);
  if (n == 1.0) return a;
  Dual<T, N> r;
  r.v = pow(a.v, n);
  T f = n * pow(a.v, n - 1.0);
  for (int i = 0; i < N; ++i) r.d[i] = f * a.d[i];
  return r;
}

template <class T, int N>
Dual<T, N> pow(const Dual<T, N>& a, const Dual<T, N>& b) {
  return exp(b * log(a));
}

template <class T, int N>
Dual<T, N> atan2(const Dual<T, N>& y, const Dual<T, N>& x) {
  Dual<T, N> r;
  r.v = atan2(y.v, x.v);
  T den = x.v * x.v + y.v * y.v;
  for (int i = 0; i < N; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / den;
  return r;
}

template <class T, int N>
Dual<T, N> abs(const Dual<T, N>& a) {
  return value_of(a) >= 0.0 ? a : -a;
}

// variable i of a jet evaluation, seeded at every nesting level
template <class S>
struct DualSeed {
  static S var(double p, int) { return p; }
};
template <class T, int N>
struct DualSeed<Dual<T, N>> {
  static Dual<T, N> var(double p, int i) {
    Dual<T, N> r;
    r.v = DualSeed<T>::var(p, i);
    if (i >= 0 && i < N) r.d[i] = T(1.0);
    return r;
  }
};

}  // namespace planefold
