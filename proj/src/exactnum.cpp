#include "spinpa/exactnum.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace spinpa {

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

namespace {

std::int64_t integer_sqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

Scalar::Scalar(Rational a, Rational b, int n) : a_(std::move(a)), b_(std::move(b)), n_(n) {
  if (n <= 0) throw ConfigError("Scalar: n must be a positive integer");
  a_.canonicalize();
  b_.canonicalize();
  canonicalize();
}

Scalar Scalar::sqrtn(int n) { return Scalar(0, 1, n); }

void Scalar::canonicalize() {
  if (sgn(b_) == 0) {
    n_ = 0;
    return;
  }
  if (is_perfect_square(n_)) {
    a_ += b_ * Rational(integer_sqrt(n_));
    b_ = 0;
    n_ = 0;
  }
}

int Scalar::merged_n(const Scalar& rhs) const {
  if (n_ != 0 && rhs.n_ != 0 && n_ != rhs.n_) {
    throw ConfigError("Scalar: mixing sqrt(" + std::to_string(n_) + ") and sqrt(" +
                      std::to_string(rhs.n_) + ")");
  }
  return n_ != 0 ? n_ : rhs.n_;
}

int Scalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with n b^2
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(n_);
  const int c = cmp(lhs, rhs);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  const int n = merged_n(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  n_ = n;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  const int n = merged_n(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  n_ = n;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  const int n = merged_n(rhs);
  if (n == 0) {
    a_ *= rhs.a_;
    return *this;
  }
  Rational a = a_ * rhs.a_ + Rational(n) * b_ * rhs.b_;
  Rational b = a_ * rhs.b_ + rhs.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  n_ = n;
  canonicalize();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("Scalar: inverse of zero");
  if (n_ == 0) {
    Scalar out;
    out.a_ = 1 / a_;
    out.a_.canonicalize();
    return out;
  }
  const Rational norm = a_ * a_ - Rational(n_) * b_ * b_;
  // n_ != 0 here only for non-square n, where the norm of a nonzero value never vanishes
  if (sgn(norm) == 0) throw std::logic_error("Scalar: zero norm for nonzero value");
  Scalar out;
  out.a_ = a_ / norm;
  out.b_ = -b_ / norm;
  out.n_ = n_;
  out.canonicalize();
  return out;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(a_) != 0) out = a_.get_str();
  if (sgn(b_) != 0) {
    const std::string tail = Rational(abs(b_)).get_str() + "*sqrt(" + std::to_string(n_) + ")";
    if (out.empty()) {
      out = (sgn(b_) < 0 ? "-" : "") + tail;
    } else {
      out += (sgn(b_) < 0 ? " - " : " + ") + tail;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

Scalar sc_add(const Scalar& x, const Scalar& y) { return x + y; }
Scalar sc_mul(const Scalar& x, const Scalar& y) { return x * y; }
Scalar sc_inv(const Scalar& x) { return x.inverse(); }

Scalar sc_sqrtn_pow(int n, int e) {
  if (n <= 0) throw ConfigError("sc_sqrtn_pow: n must be positive");
  const int half = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(half >= 0 ? half : -half));
  Rational base = half >= 0 ? Rational(power) : Rational(1) / Rational(power);
  base.canonicalize();
  if (e - 2 * half == 0) return Scalar(base);
  return Scalar(0, base, n);
}

}  // namespace spinpa
