// Exact scalars for the quaternion realization.
//
// Rational is a checked 64-bit fraction: every product or sum that would
// leave int64 throws instead of wrapping.  Surd is an element of the field
// Q(sqrt2, sqrt3), which holds cos and sin of every multiple of pi/12.
// Scalar wraps a Surd and falls back to a double once an inexact value
// enters a computation.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cohomone {

// SECTION Rational

class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0)
      throw std::domain_error("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return double(num_) / double(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_)
      return Rational(add(a.num_, b.num_), a.den_);
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t da = a.den_ / g;
    return Rational(add(mul(a.num_, b.den_ / g), mul(b.num_, da)),
                    mul(da, b.den_));
  }
  friend Rational operator-(const Rational& a) {
    Rational r = a;
    if (r.num_ == INT64_MIN) overflow();
    r.num_ = -r.num_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    return Rational(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (a - b).num_ < 0;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  [[noreturn]] static void overflow() {
    throw std::overflow_error("rational arithmetic left the 64-bit range");
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
  }
  void normalize() {
    if (den_ < 0) {
      if (num_ == INT64_MIN || den_ == INT64_MIN) overflow();
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// SECTION Surd: a + b*sqrt2 + c*sqrt3 + d*sqrt6

class Surd {
public:
  Surd() = default;
  Surd(Rational a) : c_{a, 0, 0, 0} {}
  Surd(Rational a, Rational b, Rational c, Rational d) : c_{a, b, c, d} {}

  const Rational& operator[](int i) const { return c_[i]; }
  bool is_zero() const {
    return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }
  bool is_rational() const {
    return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }
  double to_double() const {
    return c_[0].to_double() + c_[1].to_double() * std::sqrt(2.0) +
           c_[2].to_double() * std::sqrt(3.0) + c_[3].to_double() * std::sqrt(6.0);
  }

  friend Surd operator+(const Surd& x, const Surd& y) {
    return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
  }
  friend Surd operator-(const Surd& x) { return {-x.c_[0], -x.c_[1], -x.c_[2], -x.c_[3]}; }
  friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
  friend Surd operator*(const Surd& x, const Surd& y) {
    // basis products: s2*s2=2, s2*s3=s6, s2*s6=2 s3, s3*s3=3, s3*s6=3 s2, s6*s6=6
    static constexpr int target[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int factor[4][4] = {{1, 1, 1, 1}, {1, 2, 1, 2}, {1, 1, 3, 3}, {1, 2, 3, 6}};
    std::array<Rational, 4> r{};
    for (int i = 0; i < 4; ++i) {
      if (x.c_[i].is_zero()) continue;
      for (int j = 0; j < 4; ++j) {
        if (y.c_[j].is_zero()) continue;
        r[target[i][j]] += x.c_[i] * y.c_[j] * Rational(factor[i][j]);
      }
    }
    return {r[0], r[1], r[2], r[3]};
  }
  // conjugations flipping the sign of sqrt2 (and sqrt6) or of sqrt3 (and sqrt6)
  Surd flip2() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }
  Surd flip3() const { return {c_[0], c_[1], -c_[2], -c_[3]}; }
  Surd inverse() const {
    if (is_zero()) throw std::domain_error("surd division by zero");
    Surd u = *this * flip2();  // lies in Q(sqrt3)
    Surd n = u * u.flip3();    // rational
    return flip2() * u.flip3() * Surd(Rational(1) / n.c_[0]);
  }
  friend Surd operator/(const Surd& x, const Surd& y) { return x * y.inverse(); }
  friend bool operator==(const Surd& x, const Surd& y) { return x.c_ == y.c_; }

  std::string str() const {
    static const char* names[4] = {"", "*sqrt2", "*sqrt3", "*sqrt6"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << (c_[i].sign() > 0 ? "+" : "");
      os << c_[i].str() << names[i];
      first = false;
    }
    return first ? "0" : os.str();
  }

private:
  std::array<Rational, 4> c_{};
};

// SECTION Scalar

// Absolute tolerance used once a value has left the exact field.
inline constexpr double float_tolerance = 1e-9;

class Scalar {
public:
  Scalar() = default;
  Scalar(std::int64_t n) : s_(Rational(n)), f_(double(n)) {}
  Scalar(Rational r) : s_(r), f_(r.to_double()) {}
  Scalar(Surd s) : s_(s), f_(s.to_double()) {}
  static Scalar inexact(double v) {
    Scalar r;
    r.exact_ = false;
    r.f_ = v;
    return r;
  }

  bool exact() const { return exact_; }
  const Surd& surd() const { return s_; }
  double value() const { return f_; }

  bool is_zero() const { return exact_ ? s_.is_zero() : std::fabs(f_) < float_tolerance; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.s_ + b.s_);
    return inexact(a.f_ + b.f_);
  }
  friend Scalar operator-(const Scalar& a) { return a.exact_ ? Scalar(-a.s_) : inexact(-a.f_); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.s_ * b.s_);
    return inexact(a.f_ * b.f_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.s_ / b.s_);
    if (std::fabs(b.f_) < float_tolerance) throw std::domain_error("division by ~0");
    return inexact(a.f_ / b.f_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Exact comparison inside the field, tolerance comparison otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.s_ == b.s_;
    return std::fabs(a.f_ - b.f_) < float_tolerance;
  }
  // Looser test used for membership in float fallback mode.
  bool near(const Scalar& o, double tol) const {
    if (exact_ && o.exact_) return s_ == o.s_;
    return std::fabs(f_ - o.f_) < tol;
  }

  std::string str() const { return exact_ ? s_.str() : std::to_string(f_); }

private:
  bool exact_ = true;
  Surd s_{};
  double f_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

// SECTION angles in units of pi

// cos(k*pi/12) for k = 0..23, exact.
inline Surd cos_twelfth(int k) {
  k = ((k % 24) + 24) % 24;
  const Rational h(1, 2), q(1, 4);
  // first quadrant values for k = 0..6
  auto first = [&](int j) -> Surd {
    switch (j) {
      case 0: return Surd(1);
      case 1: return Surd(0, q, 0, q);   // (sqrt6 + sqrt2)/4
      case 2: return Surd(0, 0, h, 0);   // sqrt3/2
      case 3: return Surd(0, h, 0, 0);   // sqrt2/2
      case 4: return Surd(h);
      case 5: return Surd(0, -q, 0, q);  // (sqrt6 - sqrt2)/4
      default: return Surd(0);
    }
  };
  if (k <= 6) return first(k);
  if (k <= 12) return -first(12 - k);
  if (k <= 18) return -first(k - 12);
  return first(24 - k);
}
inline Surd sin_twelfth(int k) { return cos_twelfth(6 - k); }

// cos and sin of r*pi; exact when the reduced denominator divides 12.
inline std::pair<Scalar, Scalar> cos_sin_pi(const Rational& r) {
  if (12 % r.den() == 0) {
    int k = int((r.num() % (2 * r.den())) * (12 / r.den()));
    return {Scalar(cos_twelfth(k)), Scalar(sin_twelfth(k))};
  }
  double t = r.to_double() * M_PI;
  return {Scalar::inexact(std::cos(t)), Scalar::inexact(std::sin(t))};
}

}  // namespace cohomone
