#pragma once

#include <cstddef>
#include <memory>
#include <optional>

#include "shuffles/element.hpp"
#include "shuffles/term.hpp"

namespace shuffles {

/// Deterministic, repeatable enumeration of the elements of a term's order.
/// Every element appears at exactly one index; finite orders end (nullopt).
/// Sub-orders are dovetailed so no infinite branch starves another.
class ElementStream {
 public:
  explicit ElementStream(Term t);

  std::optional<Element> at(std::size_t k) const;
  const Term& term() const;

  /// Index of the element in this stream (scan by structural equality).
  /// Throws if `cap` indices pass without a hit.
  std::size_t indexOf(const Element& e, std::size_t cap = 1 << 20) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// The fixed enumeration of all rationals, diagonal by |p| + q. Index 0 is 0,
/// then 1, -1, 2, -2, 1/2, -1/2, ...
Rational rationalAt(std::size_t k);

}  // namespace shuffles
