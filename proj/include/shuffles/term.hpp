#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shuffles/ordering.hpp"

namespace shuffles {

struct TermNode;

/// Immutable syntax tree denoting a countable linear order. Construction
/// normalizes shuffles: zero parts are dropped, structurally equal parts are
/// deduplicated, and a shuffle left with no parts collapses to zero.
class Term {
 public:
  Term();  // zero

  static Term zero();
  static Term finite(std::uint64_t n);  // n == 0 gives zero()
  static Term omega();
  static Term rationals();
  static Term reverse(Term sub);
  static Term sum(Term left, Term right);
  /// Normalizing shuffle constructor; the raw parts list must be nonempty.
  static Term shuffle(std::vector<Term> parts);

  const TermNode& node() const { return *node_; }
  std::shared_ptr<const TermNode> ptr() const { return node_; }

  bool isZero() const;
  bool isShuffle() const;

  std::string str() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct ZeroT {};
struct FinOrdT {
  std::uint64_t n;  // n >= 1
};
struct OmegaT {};
struct RationalsT {};
struct ReverseT {
  Term sub;
};
struct SumT {
  Term left;
  Term right;
};
struct ShuffleT {
  std::vector<Term> parts;  // nonempty, no zero entries, structurally distinct
};

struct TermNode {
  std::variant<ZeroT, FinOrdT, OmegaT, RationalsT, ReverseT, SumT, ShuffleT> v;
};

/// Total structural order on terms (used for deduplication and equality).
Ordering compareTerms(const Term& a, const Term& b);
inline bool sameTerm(const Term& a, const Term& b) {
  return compareTerms(a, b) == Ordering::Equal;
}

/// Number of elements of the denoted order; nullopt means countably infinite.
std::optional<std::uint64_t> cardinality(const Term& t);

/// Structural facts used to certify back-and-forth preconditions.
bool hasLeastElement(const Term& t);
bool hasGreatestElement(const Term& t);
/// True when the denoted order has no adjacent pair (dense in itself).
bool isDenseOrder(const Term& t);

/// Parses the term grammar
///   t ::= "0" | NAT | "w" | "Q" | "rev(" t ")" | t "+" t | "shuffle{" t ("," t)* "}"
/// with left-associative "+" and insignificant whitespace. Returns the
/// normalized term; throws ParseError (EmptyShuffleError for "shuffle{}").
Term parseTerm(const std::string& text);

}  // namespace shuffles
