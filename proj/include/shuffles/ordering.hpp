#pragma once

#include <cstddef>

namespace shuffles {

enum class Ordering { Less, Equal, Greater };

inline Ordering flip(Ordering o) {
  switch (o) {
    case Ordering::Less: return Ordering::Greater;
    case Ordering::Greater: return Ordering::Less;
    default: return Ordering::Equal;
  }
}

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "<";
    case Ordering::Greater: return ">";
    default: return "=";
  }
}

/// The two sides of a biembeddable pair.
enum class Side { Pos, Neg };

inline Side opposite(Side s) { return s == Side::Pos ? Side::Neg : Side::Pos; }

/// Side reached from `start` after `hops` alternations.
inline Side sideAfter(Side start, std::size_t hops) {
  return (hops % 2 == 0) ? start : opposite(start);
}

inline const char* to_string(Side s) { return s == Side::Pos ? "pos" : "neg"; }

}  // namespace shuffles
