#include "shuffles/element.hpp"

#include <nlohmann/json.hpp>

#include "shuffles/dyadic.hpp"
#include "shuffles/errors.hpp"
#include "shuffles/staged_coloring.hpp"

namespace shuffles {

namespace {
std::shared_ptr<const ElemNode> make(ElemNode n) {
  return std::make_shared<const ElemNode>(std::move(n));
}
}  // namespace

Element Element::nat(std::uint64_t k) { return Element(make(ElemNode{NatElem{k}})); }
Element Element::rational(Rational q) { return Element(make(ElemNode{RatElem{std::move(q)}})); }
Element Element::reversed(Element sub) { return Element(make(ElemNode{RevElem{std::move(sub)}})); }
Element Element::sumLeft(Element sub) {
  return Element(make(ElemNode{SumElem{false, std::move(sub)}}));
}
Element Element::sumRight(Element sub) {
  return Element(make(ElemNode{SumElem{true, std::move(sub)}}));
}
Element Element::inShuffle(Rational pos, std::size_t color, Element sub) {
  return Element(make(ElemNode{ShufElem{std::move(pos), color, std::move(sub)}}));
}

std::string Element::str() const {
  const ElemNode& n = node();
  if (auto* a = std::get_if<NatElem>(&n.v)) return std::to_string(a->index);
  if (auto* r = std::get_if<RatElem>(&n.v)) return r->value.str();
  if (auto* v = std::get_if<RevElem>(&n.v)) return "rev(" + v->sub.str() + ")";
  if (auto* s = std::get_if<SumElem>(&n.v)) {
    return std::string(s->right ? "R" : "L") + "." + s->sub.str();
  }
  const auto& h = std::get<ShufElem>(n.v);
  return "(" + h.pos.str() + "#" + std::to_string(h.color) + " " + h.sub.str() + ")";
}

bool structurallyEqual(const Element& a, const Element& b) {
  if (a.ptr() == b.ptr()) return true;
  const ElemNode& na = a.node();
  const ElemNode& nb = b.node();
  if (na.v.index() != nb.v.index()) return false;
  if (auto* x = std::get_if<NatElem>(&na.v)) return x->index == std::get<NatElem>(nb.v).index;
  if (auto* x = std::get_if<RatElem>(&na.v)) return x->value == std::get<RatElem>(nb.v).value;
  if (auto* x = std::get_if<RevElem>(&na.v)) {
    return structurallyEqual(x->sub, std::get<RevElem>(nb.v).sub);
  }
  if (auto* x = std::get_if<SumElem>(&na.v)) {
    const auto& y = std::get<SumElem>(nb.v);
    return x->right == y.right && structurallyEqual(x->sub, y.sub);
  }
  const auto& x = std::get<ShufElem>(na.v);
  const auto& y = std::get<ShufElem>(nb.v);
  return x.pos == y.pos && x.color == y.color && structurallyEqual(x.sub, y.sub);
}

void validateElement(const Term& t, const Element& e) {
  const TermNode& tn = t.node();
  const ElemNode& en = e.node();
  if (std::holds_alternative<ZeroT>(tn.v)) {
    throw TypeMismatchError("the empty order has no elements");
  }
  if (auto* f = std::get_if<FinOrdT>(&tn.v)) {
    auto* a = std::get_if<NatElem>(&en.v);
    if (!a) throw TypeMismatchError("finite order expects an index, got " + e.str());
    if (a->index >= f->n) {
      throw TypeMismatchError("index " + std::to_string(a->index) + " out of range for " + t.str());
    }
    return;
  }
  if (std::holds_alternative<OmegaT>(tn.v)) {
    if (!std::holds_alternative<NatElem>(en.v)) {
      throw TypeMismatchError("omega expects an index, got " + e.str());
    }
    return;
  }
  if (std::holds_alternative<RationalsT>(tn.v)) {
    if (!std::holds_alternative<RatElem>(en.v)) {
      throw TypeMismatchError("Q expects a rational, got " + e.str());
    }
    return;
  }
  if (auto* r = std::get_if<ReverseT>(&tn.v)) {
    auto* v = std::get_if<RevElem>(&en.v);
    if (!v) throw TypeMismatchError("rev expects a wrapped element, got " + e.str());
    validateElement(r->sub, v->sub);
    return;
  }
  if (auto* s = std::get_if<SumT>(&tn.v)) {
    auto* p = std::get_if<SumElem>(&en.v);
    if (!p) throw TypeMismatchError("sum expects a tagged element, got " + e.str());
    validateElement(p->right ? s->right : s->left, p->sub);
    return;
  }
  const auto& h = std::get<ShuffleT>(tn.v);
  auto* x = std::get_if<ShufElem>(&en.v);
  if (!x) throw TypeMismatchError("shuffle expects a positioned element, got " + e.str());
  if (!dyadicIndex(x->pos)) {
    throw TypeMismatchError("shuffle position must be a dyadic in (0,1): " + x->pos.str());
  }
  if (x->color >= h.parts.size()) {
    throw TypeMismatchError("shuffle color " + std::to_string(x->color) + " out of palette");
  }
  std::size_t expected = canonicalShuffleColoring(h.parts.size())->colorAt(x->pos);
  if (x->color != expected) {
    throw TypeMismatchError("color " + std::to_string(x->color) + " at position " + x->pos.str() +
                            " should be " + std::to_string(expected));
  }
  validateElement(h.parts[x->color], x->sub);
}

namespace {

Ordering compareValidated(const Term& t, const Element& a, const Element& b) {
  const TermNode& tn = t.node();
  if (std::holds_alternative<FinOrdT>(tn.v) || std::holds_alternative<OmegaT>(tn.v)) {
    auto ia = std::get<NatElem>(a.node().v).index;
    auto ib = std::get<NatElem>(b.node().v).index;
    return ia < ib ? Ordering::Less : ia > ib ? Ordering::Greater : Ordering::Equal;
  }
  if (std::holds_alternative<RationalsT>(tn.v)) {
    return compare(std::get<RatElem>(a.node().v).value, std::get<RatElem>(b.node().v).value);
  }
  if (auto* r = std::get_if<ReverseT>(&tn.v)) {
    return flip(compareValidated(r->sub, std::get<RevElem>(a.node().v).sub,
                                 std::get<RevElem>(b.node().v).sub));
  }
  if (auto* s = std::get_if<SumT>(&tn.v)) {
    const auto& pa = std::get<SumElem>(a.node().v);
    const auto& pb = std::get<SumElem>(b.node().v);
    if (pa.right != pb.right) return pa.right ? Ordering::Greater : Ordering::Less;
    return compareValidated(pa.right ? s->right : s->left, pa.sub, pb.sub);
  }
  const auto& h = std::get<ShuffleT>(tn.v);
  const auto& xa = std::get<ShufElem>(a.node().v);
  const auto& xb = std::get<ShufElem>(b.node().v);
  Ordering byPos = compare(xa.pos, xb.pos);
  if (byPos != Ordering::Equal) return byPos;
  return compareValidated(h.parts[xa.color], xa.sub, xb.sub);
}

}  // namespace

Ordering compareElements(const Term& t, const Element& a, const Element& b) {
  validateElement(t, a);
  validateElement(t, b);
  return compareValidated(t, a, b);
}

Ordering reverseSemantics(const Term& t, const Element& a, const Element& b) {
  Term rev = Term::reverse(t);
  return compareElements(rev, a, b);
}

namespace {

nlohmann::json toJsonValue(const Element& e) {
  const ElemNode& n = e.node();
  if (auto* a = std::get_if<NatElem>(&n.v)) return a->index;
  if (auto* r = std::get_if<RatElem>(&n.v)) return r->value.str();
  if (auto* v = std::get_if<RevElem>(&n.v)) return nlohmann::json{{"rev", toJsonValue(v->sub)}};
  if (auto* s = std::get_if<SumElem>(&n.v)) {
    return nlohmann::json{{"sum", s->right ? "R" : "L"}, {"sub", toJsonValue(s->sub)}};
  }
  const auto& h = std::get<ShufElem>(n.v);
  return nlohmann::json{{"pos", h.pos.str()}, {"color", h.color}, {"sub", toJsonValue(h.sub)}};
}

Element fromJsonValue(const nlohmann::json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    return Element::nat(j.get<std::uint64_t>());
  }
  if (j.is_string()) {
    auto q = Rational::parse(j.get<std::string>());
    if (!q) throw Error("bad rational literal in element JSON: " + j.get<std::string>());
    return Element::rational(*q);
  }
  if (!j.is_object()) throw Error("bad element JSON: " + j.dump());
  if (j.contains("rev")) return Element::reversed(fromJsonValue(j.at("rev")));
  if (j.contains("sum")) {
    const std::string tag = j.at("sum").get<std::string>();
    Element sub = fromJsonValue(j.at("sub"));
    if (tag == "L") return Element::sumLeft(std::move(sub));
    if (tag == "R") return Element::sumRight(std::move(sub));
    throw Error("bad sum tag in element JSON: " + tag);
  }
  if (j.contains("pos")) {
    auto q = Rational::parse(j.at("pos").get<std::string>());
    if (!q) throw Error("bad position in element JSON");
    return Element::inShuffle(*q, j.at("color").get<std::size_t>(), fromJsonValue(j.at("sub")));
  }
  throw Error("unrecognized element JSON: " + j.dump());
}

}  // namespace

std::string elementToJson(const Element& e) { return toJsonValue(e).dump(); }

Element elementFromJson(const std::string& json) {
  return fromJsonValue(nlohmann::json::parse(json));
}

}  // namespace shuffles
