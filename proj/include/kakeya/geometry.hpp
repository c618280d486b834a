#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kakeya {

/* All geometric predicates below take explicit tolerances; this is the
 * default absolute tolerance used when a caller does not care. */
constexpr double kTol = 1e-9;

/* Errors carry a machine-readable kind ("EmptyBody", "Unbounded", ...) next
 * to the human-readable message so callers can branch without string
 * matching on the whole text. */
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
  throw Error(kind, msg);
}

template <int N>
struct Vec {
  static_assert(N >= 1 && N <= 8);
  std::array<double, N> c{};

  Vec() = default;
  explicit Vec(const std::array<double, N>& a) : c(a) {}

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  Vec operator+(const Vec& o) const {
    Vec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Vec operator-() const {
    Vec r;
    for (int i = 0; i < N; ++i) r.c[i] = -c[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
    return r;
  }
  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
};

template <int N>
inline Vec<N> operator*(double s, const Vec<N>& v) {
  return v * s;
}

template <int N>
inline double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0;
  for (int i = 0; i < N; ++i) s += a.c[i] * b.c[i];
  return s;
}

template <int N>
inline double norm2(const Vec<N>& v) {
  return dot(v, v);
}

template <int N>
inline double norm(const Vec<N>& v) {
  return std::sqrt(norm2(v));
}

template <int N>
inline double dist(const Vec<N>& a, const Vec<N>& b) {
  return norm(a - b);
}

template <int N>
inline bool is_finite(const Vec<N>& v) {
  for (int i = 0; i < N; ++i)
    if (!std::isfinite(v.c[i])) return false;
  return true;
}

inline Vec<2> vec2(double x, double y) { return Vec<2>({x, y}); }
inline Vec<3> vec3(double x, double y, double z) { return Vec<3>({x, y, z}); }
inline Vec<4> vec4(double x, double y, double z, double w) {
  return Vec<4>({x, y, z, w});
}

/* Unit vector. Construction renormalizes; inputs shorter than 1e-12 are
 * rejected rather than silently blown up. */
template <int N>
struct Direction {
  Vec<N> u;

  explicit Direction(const Vec<N>& v) {
    if (!is_finite(v)) fail("DomainError", "direction has non-finite entries");
    double n = norm(v);
    if (n < 1e-12) fail("DomainError", "direction too short to normalize");
    u = v * (1.0 / n);
  }
  double operator[](int i) const { return u[i]; }
  const Vec<N>& vec() const { return u; }
};

namespace detail {
/* Determinant of a small matrix by Gaussian elimination with partial
 * pivoting; rows are given as an array of Vec<N>. */
template <int N>
inline double det_small(std::array<Vec<N>, N> m) {
  double det = 1.0;
  for (int k = 0; k < N; ++k) {
    int piv = k;
    for (int i = k + 1; i < N; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    if (std::fabs(m[k][k]) < 1e-14) return 0.0;
    det *= m[k][k];
    for (int i = k + 1; i < N; ++i) {
      double f = m[i][k] / m[k][k];
      for (int j = k; j < N; ++j) m[i].c[j] -= f * m[k][j];
    }
  }
  return det;
}
}  // namespace detail

/* Proper rotation (orthogonal, det +1), validated at construction within
 * 1e-10.  Stored row-major: apply(x)[i] = <rows[i], x>. */
template <int N>
struct Rotation {
  std::array<Vec<N>, N> rows;

  static Rotation identity() {
    Rotation r;
    for (int i = 0; i < N; ++i) {
      r.rows[i] = Vec<N>{};
      r.rows[i].c[i] = 1.0;
    }
    return r;
  }

  static Rotation from_rows(const std::array<Vec<N>, N>& m) {
    Rotation r;
    r.rows = m;
    for (int i = 0; i < N; ++i)
      if (!is_finite(m[i])) fail("DomainError", "rotation has non-finite entries");
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        double g = dot(m[i], m[j]) - (i == j ? 1.0 : 0.0);
        if (std::fabs(g) > 1e-10)
          fail("DomainError", "rotation rows are not orthonormal");
      }
    if (std::fabs(detail::det_small<N>(m) - 1.0) > 1e-10)
      fail("DomainError", "rotation determinant is not +1");
    return r;
  }

  Vec<N> apply(const Vec<N>& x) const {
    Vec<N> y;
    for (int i = 0; i < N; ++i) y.c[i] = dot(rows[i], x);
    return y;
  }

  /* Transpose equals inverse for a rotation. */
  Rotation transposed() const {
    Rotation r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r.rows[i].c[j] = rows[j].c[i];
    return r;
  }
};

inline Rotation<2> rotation2(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return Rotation<2>::from_rows({vec2(c, -s), vec2(s, c)});
}

/* Rodrigues form, axis need not be unit. */
inline Rotation<3> rotation3_axis_angle(const Vec<3>& axis, double theta) {
  Direction<3> a(axis);
  double x = a[0], y = a[1], z = a[2];
  double c = std::cos(theta), s = std::sin(theta), t = 1 - c;
  return Rotation<3>::from_rows({vec3(t * x * x + c, t * x * y - s * z, t * x * z + s * y),
                                 vec3(t * x * y + s * z, t * y * y + c, t * y * z - s * x),
                                 vec3(t * x * z - s * y, t * y * z + s * x, t * z * z + c)});
}

/* Closed segment {base + t*len*dir : t in [0,1]}, len > 0. */
template <int N>
struct Segment {
  Vec<N> base;
  Direction<N> dir;
  double len;

  Segment(const Vec<N>& b, const Direction<N>& d, double l)
      : base(b), dir(d), len(l) {
    if (!is_finite(b)) fail("DomainError", "segment base has non-finite entries");
    if (!(l > 0) || !std::isfinite(l)) fail("DomainError", "segment length must be positive");
  }

  Vec<N> head() const { return base + dir.vec() * len; }

  Segment rotated(const Rotation<N>& r) const {
    return Segment(r.apply(base), Direction<N>(r.apply(dir.vec())), len);
  }
  Segment translated(const Vec<N>& t) const { return Segment(base + t, dir, len); }
};

/* Unit segment from the origin in direction v: the probe used throughout
 * the direction-path machinery. */
template <int N>
inline Segment<N> unit_segment(const Direction<N>& v) {
  return Segment<N>(Vec<N>{}, v, 1.0);
}

/* Geodesic interpolation between unit vectors; falls back to linear
 * renormalization when the endpoints are nearly parallel. */
template <int N>
inline Vec<N> slerp(const Vec<N>& a, const Vec<N>& b, double t) {
  double cosw = dot(a, b);
  if (cosw > 1) cosw = 1;
  if (cosw < -1) cosw = -1;
  double w = std::acos(cosw);
  if (w < 1e-9) {
    Vec<N> m = a * (1 - t) + b * t;
    double n = norm(m);
    return n > 1e-12 ? m * (1.0 / n) : a;
  }
  if (w > M_PI - 1e-9)
    fail("DomainError", "slerp between antipodal directions is ambiguous");
  double s = std::sin(w);
  return a * (std::sin((1 - t) * w) / s) + b * (std::sin(t * w) / s);
}

template <int N>
inline double arc_angle(const Vec<N>& a, const Vec<N>& b) {
  double c = dot(a, b) / (norm(a) * norm(b));
  if (c > 1) c = 1;
  if (c < -1) c = -1;
  return std::acos(c);
}

}  // namespace kakeya
