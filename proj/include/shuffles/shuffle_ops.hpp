#pragma once

#include <utility>
#include <vector>

#include "shuffles/coloring.hpp"
#include "shuffles/enumerate.hpp"
#include "shuffles/session.hpp"
#include "shuffles/witness.hpp"

namespace shuffles {

/// A point of a generic ordered sum: an index element with an element of the
/// order assigned to it.
struct SumPoint {
  Element base;
  Element inner;
};

/// The ordered sum over an index order of per-point orders: pairs compared
/// by index first, then within the assigned order.
class OrderedSum {
 public:
  using Assign = std::function<Term(const Element&)>;

  OrderedSum(Term index, Assign assign);

  Ordering cmp(const SumPoint& a, const SumPoint& b) const;
  std::optional<SumPoint> at(std::size_t k) const;
  const Term& indexTerm() const { return index_; }

 private:
  Term index_;
  Assign assign_;
  ElementStream indexStream_;
  mutable std::vector<std::pair<Element, ElementStream>> blockStreams_;  // by index position
  mutable std::vector<SumPoint> memo_;
  mutable std::size_t diag_ = 0, cursor_ = 0;
  mutable bool exhausted_ = false;
  mutable std::mutex mu_;
  ElementStream& blockAt(std::size_t idx) const;
};

/// Colored position presentation of a shuffle: the canonical dyadic order
/// with the palette's dense coloring, whose blocks are the palette terms.
/// Element layout is the shuffle element encoding.
struct ShufflePresentation {
  Term term;                          // the normalized shuffle term
  DenseColoring coloring;             // canonical coloring of the positions
  ElementStream elements;
};

/// Requires the palette to be normalized (no zeros, no structural dups).
ShufflePresentation makeShuffle(const Palette& palette);

/// Element view of a term order with a caller-chosen coloring.
ColoredOrderView<Element> coloredTermView(const Term& t,
                                          std::function<ColorKey(const Element&)> color);
/// Single-color view of a term order.
ColoredOrderView<Element> plainTermView(const Term& t);

/// Back-and-forth isomorphism between two presented colored orders. When an
/// endpoint carries a term, certified structural violations of density or
/// unboundedness raise PreconditionViolationError before any matching runs.
IsoWitness backAndForth(ColoredOrderView<Element> a, ColoredOrderView<Element> b,
                        WitnessEndpoint srcInfo, WitnessEndpoint dstInfo,
                        IsoWitness::Cmp cmpSrc, IsoWitness::Cmp cmpDst, SessionConfig cfg = {});

/// Witness for absorbing a second copy: sum of two copies of the shuffle is
/// isomorphic to the shuffle.
IsoWitness witnessIdempotence(const Palette& S);

/// Witness absorbing a single shuffland block between two copies.
IsoWitness witnessAbsorbShuffland(const Palette& S, std::size_t memberIdx);

/// Witness absorbing composite shufflands: the shuffle of a sub-palette
/// together with blocks of the form t1 + (shuffle of S) + t2 (t1, t2 in
/// S or zero) is isomorphic to the shuffle of S.
IsoWitness witnessAbsorbSet(const Palette& S, std::vector<std::size_t> keepIdx,
                            std::vector<std::pair<Term, Term>> composites);

/// Flattens nested sums left-to-right, dropping zero summands.
std::vector<Term> flattenSum(const Term& t);

}  // namespace shuffles
