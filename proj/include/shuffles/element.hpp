#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "shuffles/rational.hpp"
#include "shuffles/term.hpp"

namespace shuffles {

struct ElemNode;

/// Canonical finite address of a point in the order denoted by a term. The
/// shape mirrors the term's constructor at every level.
class Element {
 public:
  static Element nat(std::uint64_t k);                   // FinOrd / Omega index
  static Element rational(Rational q);                   // Rationals value
  static Element reversed(Element sub);                  // Reverse wrapper
  static Element sumLeft(Element sub);
  static Element sumRight(Element sub);
  static Element inShuffle(Rational pos, std::size_t color, Element sub);

  const ElemNode& node() const { return *node_; }
  std::shared_ptr<const ElemNode> ptr() const { return node_; }

  std::string str() const;

 private:
  explicit Element(std::shared_ptr<const ElemNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ElemNode> node_;
};

struct NatElem {
  std::uint64_t index;
};
struct RatElem {
  Rational value;
};
struct RevElem {
  Element sub;
};
struct SumElem {
  bool right;
  Element sub;
};
struct ShufElem {
  Rational pos;        // dyadic in (0,1)
  std::size_t color;   // index of the part the position carries
  Element sub;
};

struct ElemNode {
  std::variant<NatElem, RatElem, RevElem, SumElem, ShufElem> v;
};

/// Structural identity (same shape and values); independent of any term.
bool structurallyEqual(const Element& a, const Element& b);

/// Checks shape against the term at every level, including that shuffle
/// color indices match the canonical coloring at the position. Throws
/// TypeMismatchError describing the first violation.
void validateElement(const Term& t, const Element& e);

/// Total order on the elements of t; throws TypeMismatchError when an
/// element does not fit the term.
Ordering compareElements(const Term& t, const Element& a, const Element& b);

/// Comparison under reversal of t, for elements well-typed for reverse(t).
Ordering reverseSemantics(const Term& t, const Element& a, const Element& b);

/// JSON round-trip: bare integers for indices, "p/q" strings for rationals,
/// {"rev":...}, {"sum":"L"|"R","sub":...}, {"pos":"1/2","color":0,"sub":...}.
std::string elementToJson(const Element& e);
Element elementFromJson(const std::string& json);

}  // namespace shuffles
