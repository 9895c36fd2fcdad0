#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "shuffles/ordering.hpp"

namespace shuffles {

/// Exact rational number. Always canonical: positive denominator and
/// gcd(numerator, denominator) == 1. Comparison agrees with
/// cross-multiplication by construction.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design (integer literals)
  Rational(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p", "p/q" or "-p/q"; returns nullopt on malformed text or q == 0.
  static std::optional<Rational> parse(const std::string& text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool isInteger() const { return v_.get_den() == 1; }
  /// True when the value is k / 2^m in lowest terms.
  bool isDyadic() const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ / b.v_)); }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// Largest integer <= value.
  mpz_class floor() const;

 private:
  mpq_class v_;
};

inline Ordering compare(const Rational& a, const Rational& b) {
  int c = cmp(a.raw(), b.raw());
  return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
}

inline Rational midpoint(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

}  // namespace shuffles
