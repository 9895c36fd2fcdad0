#include "shuffles/embed.hpp"

#include <set>

#include "shuffles/errors.hpp"
#include "shuffles/staged_coloring.hpp"

namespace shuffles {

Rational shuffleBlockLow(const DyadicWord& w) {
  // lo = 0.d0 d1 ... in base 4 with trailing terminator digit 0.
  Rational lo(0);
  Rational scale(1, 4);
  for (bool b : w.bits) {
    lo = lo + Rational(b ? 3 : 1) * scale;
    scale = scale * Rational(1, 4);
  }
  return lo;
}

Rational shuffleBlockScale(const DyadicWord& w) {
  Rational scale(1);
  for (std::size_t i = 0; i < w.bits.size() + 1; ++i) scale = scale * Rational(1, 4);
  return scale;
}

std::optional<ShuffleDecode> decodeShuffleBlock(const Rational& r) {
  if (!(Rational(0) < r && r < Rational(1))) return std::nullopt;
  DyadicWord w;
  Rational cur = r;
  std::set<Rational> seen;  // denominator is preserved, so states are finite
  while (true) {
    if (!seen.insert(cur).second) return std::nullopt;  // periodic: no terminator ever
    Rational scaled = cur * Rational(4);
    Rational digit(mpq_class(scaled.floor()));
    Rational rest = scaled - digit;
    if (digit == Rational(0)) {
      if (!w.isOrderElement()) return std::nullopt;
      if (!(Rational(0) < rest && rest < Rational(1))) return std::nullopt;
      return ShuffleDecode{std::move(w), std::move(rest)};
    }
    if (digit == Rational(1)) {
      w.bits.push_back(false);
    } else if (digit == Rational(3)) {
      w.bits.push_back(true);
    } else {
      return std::nullopt;  // digit 2 never occurs in block codes
    }
    cur = rest;
  }
}

namespace {

Rational forwardRationals(const Rational& x) {
  // Order isomorphism Q -> Q n (0,1): nonnegative x to (1+2x)/(2+2x),
  // negative x to 1/(2(1-x)).
  if (x >= Rational(0)) {
    return (Rational(1) + Rational(2) * x) / (Rational(2) + Rational(2) * x);
  }
  return Rational(1) / (Rational(2) * (Rational(1) - x));
}

Rational invertRationals(const Rational& r) {
  if (r >= Rational(1, 2)) {
    return (Rational(2) * r - Rational(1)) / (Rational(2) * (Rational(1) - r));
  }
  return (Rational(2) * r - Rational(1)) / (Rational(2) * r);
}

Rational forwardRec(const Term& t, const Element& e) {
  const TermNode& tn = t.node();
  if (auto* f = std::get_if<FinOrdT>(&tn.v)) {
    std::uint64_t k = std::get<NatElem>(e.node().v).index;
    return Rational(mpq_class(mpz_class(static_cast<unsigned long>(k)) + 1,
                              mpz_class(static_cast<unsigned long>(f->n)) + 1));
  }
  if (std::holds_alternative<OmegaT>(tn.v)) {
    std::uint64_t k = std::get<NatElem>(e.node().v).index;
    return Rational(mpq_class(mpz_class(static_cast<unsigned long>(k)) + 1,
                              mpz_class(static_cast<unsigned long>(k)) + 2));
  }
  if (std::holds_alternative<RationalsT>(tn.v)) {
    return forwardRationals(std::get<RatElem>(e.node().v).value);
  }
  if (auto* r = std::get_if<ReverseT>(&tn.v)) {
    return Rational(1) - forwardRec(r->sub, std::get<RevElem>(e.node().v).sub);
  }
  if (auto* s = std::get_if<SumT>(&tn.v)) {
    const auto& p = std::get<SumElem>(e.node().v);
    Rational inner = forwardRec(p.right ? s->right : s->left, p.sub);
    return p.right ? Rational(1, 2) + inner * Rational(1, 2) : inner * Rational(1, 2);
  }
  const auto& h = std::get<ShuffleT>(tn.v);
  const auto& x = std::get<ShufElem>(e.node().v);
  DyadicWord w = DyadicWord::fromValue(x.pos).value();
  Rational inner = forwardRec(h.parts[x.color], x.sub);
  return shuffleBlockLow(w) + inner * shuffleBlockScale(w);
}

std::optional<Element> invertRec(const Term& t, const Rational& r) {
  if (!(Rational(0) < r && r < Rational(1))) return std::nullopt;
  const TermNode& tn = t.node();
  if (std::holds_alternative<ZeroT>(tn.v)) return std::nullopt;
  if (auto* f = std::get_if<FinOrdT>(&tn.v)) {
    Rational k = r * Rational(mpq_class(mpz_class(static_cast<unsigned long>(f->n)) + 1)) - Rational(1);
    if (!k.isInteger() || k < Rational(0)) return std::nullopt;
    mpz_class ki = k.numerator();
    if (ki >= static_cast<unsigned long>(f->n)) return std::nullopt;
    return Element::nat(ki.get_ui());
  }
  if (std::holds_alternative<OmegaT>(tn.v)) {
    // r == (k+1)/(k+2)  <=>  k == (2r-1)/(1-r)
    Rational k = (Rational(2) * r - Rational(1)) / (Rational(1) - r);
    if (!k.isInteger() || k < Rational(0)) return std::nullopt;
    return Element::nat(k.numerator().get_ui());
  }
  if (std::holds_alternative<RationalsT>(tn.v)) {
    return Element::rational(invertRationals(r));
  }
  if (auto* v = std::get_if<ReverseT>(&tn.v)) {
    auto sub = invertRec(v->sub, Rational(1) - r);
    if (!sub) return std::nullopt;
    return Element::reversed(std::move(*sub));
  }
  if (auto* s = std::get_if<SumT>(&tn.v)) {
    if (r < Rational(1, 2)) {
      auto sub = invertRec(s->left, r * Rational(2));
      if (!sub) return std::nullopt;
      return Element::sumLeft(std::move(*sub));
    }
    if (r > Rational(1, 2)) {
      auto sub = invertRec(s->right, r * Rational(2) - Rational(1));
      if (!sub) return std::nullopt;
      return Element::sumRight(std::move(*sub));
    }
    return std::nullopt;  // the cut itself carries no element
  }
  const auto& h = std::get<ShuffleT>(tn.v);
  auto dec = decodeShuffleBlock(r);
  if (!dec) return std::nullopt;
  Rational pos = dec->word.value();
  std::size_t color = canonicalShuffleColoring(h.parts.size())->colorAt(pos);
  auto sub = invertRec(h.parts[color], dec->rest);
  if (!sub) return std::nullopt;
  return Element::inShuffle(std::move(pos), color, std::move(*sub));
}

}  // namespace

Rational RationalEmbedding::forward(const Element& e) const {
  validateElement(term_, e);
  return forwardRec(term_, e);
}

std::optional<Element> RationalEmbedding::invert(const Rational& r) const {
  return invertRec(term_, r);
}

}  // namespace shuffles
