#pragma once

#include <string>

#include "shuffles/rational.hpp"

namespace shuffles {

/// A rational extended with least and greatest elements.
class ExtRational {
 public:
  enum class Tag { NegInf, Fin, PosInf };

  static ExtRational negInf() { return ExtRational(Tag::NegInf, Rational()); }
  static ExtRational posInf() { return ExtRational(Tag::PosInf, Rational()); }
  ExtRational(Rational q) : tag_(Tag::Fin), value_(std::move(q)) {}  // NOLINT: implicit by design
  ExtRational(long n) : tag_(Tag::Fin), value_(n) {}                 // NOLINT

  Tag tag() const { return tag_; }
  bool isFinite() const { return tag_ == Tag::Fin; }
  bool isNegInf() const { return tag_ == Tag::NegInf; }
  bool isPosInf() const { return tag_ == Tag::PosInf; }
  const Rational& finite() const { return value_; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::Fin || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }

  std::string str() const {
    switch (tag_) {
      case Tag::NegInf: return "-inf";
      case Tag::PosInf: return "inf";
      default: return value_.str();
    }
  }

 private:
  ExtRational(Tag t, Rational q) : tag_(t), value_(std::move(q)) {}
  Tag tag_;
  Rational value_;
};

inline Ordering compare(const ExtRational& a, const ExtRational& b) {
  auto rank = [](const ExtRational& x) {
    switch (x.tag()) {
      case ExtRational::Tag::NegInf: return -1;
      case ExtRational::Tag::PosInf: return 1;
      default: return 0;
    }
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? Ordering::Less : Ordering::Greater;
  if (ra != 0) return Ordering::Equal;
  return compare(a.finite(), b.finite());
}

inline bool operator<(const ExtRational& a, const ExtRational& b) {
  return compare(a, b) == Ordering::Less;
}

}  // namespace shuffles
