#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace dstab {

// Exact rational number, always stored in canonical form: reduced fraction,
// positive denominator, zero represented as 0/1.  Backed by GMP.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int v) : q_(v) {}             // NOLINT: implicit by design
  Rational(long v) : q_(static_cast<signed long>(v)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& q);

  // Parses "p", "p/q", or an exact decimal such as "0.25" (-> 1/4).
  // A leading Unicode minus sign (U+2212) is accepted as '-'.
  // Throws ParseError on malformed input and SingularError on zero
  // denominators.
  static Rational parse(std::string_view text);

  // Canonical text form: "p/q" with q > 1, otherwise just "p".
  // parse(str()) round-trips exactly.
  std::string str() const;

  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }

  // Multiplicative inverse; throws SingularError on zero.
  Rational inv() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.q_ != b.q_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.q_ < b.q_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.q_ <= b.q_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.q_ > b.q_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.q_ >= b.q_;
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dstab
