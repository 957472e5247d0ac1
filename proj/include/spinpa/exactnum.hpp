#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinpa {

using Rational = mpq_class;

struct ConfigError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact element a + b*sqrt(n) of Q(sqrt n).
///
/// A value with b == 0 is a plain rational and combines with scalars of any
/// n; a value with a nonzero sqrt part remembers its n, and mixing two
/// different n is a ConfigError. When n is a perfect square the sqrt part is
/// folded into the rational part, so structural equality is value equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(int value) : a_(value) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Scalar(Rational a, Rational b, int n);

  /// sqrt(n) itself.
  static Scalar sqrtn(int n);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  /// The bound n, or 0 when the value is rational.
  int n() const { return n_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  /// -1, 0 or +1 according to the sign of the real value.
  int sign() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Renders as "p/q + r/s*sqrt(n)", dropping zero parts.
  std::string to_string() const;

 private:
  int merged_n(const Scalar& rhs) const;
  void canonicalize();

  Rational a_{0};
  Rational b_{0};
  int n_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

Scalar sc_add(const Scalar& x, const Scalar& y);
Scalar sc_mul(const Scalar& x, const Scalar& y);
Scalar sc_inv(const Scalar& x);

/// (sqrt n)^e for any integer e.
Scalar sc_sqrtn_pow(int n, int e);

/// True when n = r*r for some integer r.
bool is_perfect_square(std::int64_t n);

}  // namespace spinpa
