#include "dstab/rational.hpp"

#include <cctype>
#include <ostream>

#include "dstab/errors.hpp"

namespace dstab {

namespace {

// Replaces a leading UTF-8 minus sign (U+2212, bytes E2 88 92) with '-'.
std::string normalize_sign(std::string_view text) {
  std::string s(text);
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xE2 &&
      static_cast<unsigned char>(s[1]) == 0x88 &&
      static_cast<unsigned char>(s[2]) == 0x92) {
    s.replace(0, 3, "-");
  }
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw SingularError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s = normalize_sign(text);
  if (s.empty()) throw ParseError("empty rational literal");

  std::string_view body(s);
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) throw ParseError("sign without digits: '" + s + "'");

  auto slash = body.find('/');
  auto dot = body.find('.');
  mpq_class value;
  if (slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed fraction: '" + s + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw SingularError("fraction with zero denominator: '" + s + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (dot != std::string_view::npos) {
    std::string_view ipart = body.substr(0, dot);
    std::string_view fpart = body.substr(dot + 1);
    if (ipart.empty() && fpart.empty()) {
      throw ParseError("malformed decimal: '" + s + "'");
    }
    if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart))) {
      throw ParseError("malformed decimal: '" + s + "'");
    }
    mpz_class digits(std::string(ipart) + std::string(fpart), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fpart.size());
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(body)) throw ParseError("malformed integer: '" + s + "'");
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::inv() const {
  if (is_zero()) throw SingularError("inverse of zero");
  return Rational(mpq_class(1) / q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw SingularError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace dstab
