#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shuffles/rational.hpp"

namespace shuffles {

/// Finite binary word. Words ending in 1 are the canonical representatives of
/// the dyadic rationals in (0,1) via w = b0 b1 ... -> sum b_j 2^-(j+1); the
/// empty word and words ending in 0 occur only as intermediate artifacts.
struct DyadicWord {
  std::vector<bool> bits;

  bool isOrderElement() const { return !bits.empty() && bits.back(); }
  std::size_t size() const { return bits.size(); }

  Rational value() const;
  /// Canonical word of a dyadic in (0,1); nullopt if q is not one.
  static std::optional<DyadicWord> fromValue(const Rational& q);

  std::string str() const;
};

/// The fixed enumeration of dyadics in (0,1): level by level (denominator
/// 2, 4, 8, ...), ascending within a level. Index 0 is 1/2.
Rational dyadicAt(std::size_t k);

/// Inverse of dyadicAt; nullopt when q is not a dyadic in (0,1).
std::optional<std::size_t> dyadicIndex(const Rational& q);

}  // namespace shuffles
