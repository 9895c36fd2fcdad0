#pragma once

#include <optional>

#include "shuffles/dyadic.hpp"
#include "shuffles/element.hpp"
#include "shuffles/term.hpp"

namespace shuffles {

/// Base-4 block coding shared by all shuffle-shaped presentations: each bit
/// of a position word becomes a digit (0 -> 1, 1 -> 3) and the digit 0
/// terminates the word, after which the block interior occupies the open
/// remainder of the interval. Distinct positions get disjoint intervals in
/// position order and decoding is total (periodic expansions are detected
/// and rejected).
Rational shuffleBlockLow(const DyadicWord& w);
Rational shuffleBlockScale(const DyadicWord& w);

struct ShuffleDecode {
  DyadicWord word;   // nonempty, ends in 1
  Rational rest;     // offset inside the block, strictly in (0,1)
};
std::optional<ShuffleDecode> decodeShuffleBlock(const Rational& r);

/// Strictly monotone embedding of a term's order into the rationals, with
/// image inside (0,1) and a computable inverse. invert(forward(x)) == x and
/// rationals outside the image yield nullopt.
class RationalEmbedding {
 public:
  explicit RationalEmbedding(Term t) : term_(std::move(t)) {}

  Rational forward(const Element& e) const;
  std::optional<Element> invert(const Rational& r) const;

  const Term& term() const { return term_; }

 private:
  Term term_;
};

}  // namespace shuffles
