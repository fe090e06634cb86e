// Unit quaternions and pairs of them, the elements of S3 and S3xS3.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "exact.hpp"
#include "linalg.hpp"

namespace cohomone {

enum class Axis { i = 1, j = 2, k = 3 };

inline char axis_char(Axis a) { return "?ijk"[int(a)]; }

struct Quaternion {
  Scalar w, x, y, z;

  Quaternion() : w(1), x(0), y(0), z(0) {}
  Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}

  static Quaternion unit(Axis a) {
    Quaternion q(0, 0, 0, 0);
    q[int(a)] = Scalar(1);
    return q;
  }
  // e^{a * pi * angle}, exact when 12*angle is an integer.
  static Quaternion polar(Axis a, const Rational& angle) {
    auto [c, s] = cos_sin_pi(angle);
    Quaternion q(c, 0, 0, 0);
    q[int(a)] = s;
    return q;
  }

  Scalar& operator[](int n) { return n == 0 ? w : n == 1 ? x : n == 2 ? y : z; }
  const Scalar& operator[](int n) const { return n == 0 ? w : n == 1 ? x : n == 2 ? y : z; }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  // inverse of a unit quaternion
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Scalar norm2() const { return w * w + x * x + y * y + z * z; }
  bool exact() const { return w.exact() && x.exact() && y.exact() && z.exact(); }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  bool near(const Quaternion& o, double tol) const {
    return w.near(o.w, tol) && x.near(o.x, tol) && y.near(o.y, tol) && z.near(o.z, tol);
  }
  bool is_one() const { return w == Scalar(1) && x.is_zero() && y.is_zero() && z.is_zero(); }

  std::string str() const {
    return "(" + w.str() + "," + x.str() + "," + y.str() + "," + z.str() + ")";
  }
};

// Conjugation q v q^-1 of an imaginary vector (v1 i + v2 j + v3 k).
inline std::array<Scalar, 3> rotate(const Quaternion& q, const std::array<Scalar, 3>& v) {
  Quaternion p(0, v[0], v[1], v[2]);
  Quaternion r = q * p * q.conj();
  return {r.x, r.y, r.z};
}

// An element of S3 x S3.
struct QPair {
  Quaternion a, b;

  QPair() = default;
  QPair(Quaternion a_, Quaternion b_) : a(a_), b(b_) {}
  static QPair from_signs(int s, int t) {
    return {s > 0 ? Quaternion() : -Quaternion(), t > 0 ? Quaternion() : -Quaternion()};
  }

  friend QPair operator*(const QPair& x, const QPair& y) { return {x.a * y.a, x.b * y.b}; }
  QPair inv() const { return {a.conj(), b.conj()}; }
  bool exact() const { return a.exact() && b.exact(); }
  bool is_one() const { return a.is_one() && b.is_one(); }
  bool is_central() const {
    auto real = [](const Quaternion& q) { return q.x.is_zero() && q.y.is_zero() && q.z.is_zero(); };
    return real(a) && real(b);
  }
  friend bool operator==(const QPair& x, const QPair& y) { return x.a == y.a && x.b == y.b; }
  bool near(const QPair& o, double tol) const { return a.near(o.a, tol) && b.near(o.b, tol); }
  std::string str() const { return "[" + a.str() + "," + b.str() + "]"; }
};

inline QPair power(const QPair& g, int n) {
  QPair r;
  for (int i = 0; i < n; ++i) r = r * g;
  return r;
}

// Ad action on the Lie algebra su(2)+su(2) in coordinates
// {(i,0),(j,0),(k,0),(0,i),(0,j),(0,k)}.
inline Vec adjoint(const QPair& g, const Vec& v) {
  auto l = rotate(g.a, {v[0], v[1], v[2]});
  auto r = rotate(g.b, {v[3], v[4], v[5]});
  return {l[0], l[1], l[2], r[0], r[1], r[2]};
}

// The 48 elements of the binary octahedral group, a finite exact test bed.
inline std::vector<Quaternion> binary_octahedral() {
  std::vector<Quaternion> out;
  for (int n = 0; n < 4; ++n)
    for (int s : {1, -1}) {
      Quaternion q(0, 0, 0, 0);
      q[n] = Scalar(s);
      out.push_back(q);
    }
  const Rational h(1, 2);
  for (int m = 0; m < 16; ++m) {
    Quaternion q;
    for (int n = 0; n < 4; ++n) q[n] = Scalar((m >> n) & 1 ? -h : h);
    out.push_back(q);
  }
  const Surd r2(0, h, 0, 0);  // 1/sqrt2
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v)
      for (int s : {1, -1})
        for (int t : {1, -1}) {
          Quaternion q(0, 0, 0, 0);
          q[u] = Scalar(s > 0 ? r2 : -r2);
          q[v] = Scalar(t > 0 ? r2 : -r2);
          out.push_back(q);
        }
  return out;
}

}  // namespace cohomone
