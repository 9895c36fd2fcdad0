#include "shuffles/shuffle_ops.hpp"

#include <algorithm>
#include <memory>

#include "shuffles/dyadic.hpp"
#include "shuffles/errors.hpp"

namespace shuffles {

namespace {

void requireNormalizedPalette(const Palette& S) {
  if (S.colors.empty()) throw EmptyPaletteError();
  Term t = Term::shuffle(S.colors);
  if (!t.isShuffle() || std::get<ShuffleT>(t.node().v).parts.size() != S.colors.size()) {
    throw Error("palette must be zero-free and structurally duplicate-free");
  }
}

std::optional<std::size_t> findTerm(const std::vector<Term>& list, const Term& t) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (sameTerm(list[i], t)) return i;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Term> flattenSum(const Term& t) {
  std::vector<Term> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    if (auto* s = std::get_if<SumT>(&cur.node().v)) {
      stack.push_back(s->right);
      stack.push_back(s->left);
    } else if (!cur.isZero()) {
      out.push_back(cur);
    }
  }
  return out;
}

namespace {

std::size_t leafCount(const Term& t) { return flattenSum(t).size(); }

// Element of a sum tree -> (flat leaf slot, element of that leaf).
std::pair<std::size_t, Element> flattenElement(const Term& t, const Element& e) {
  if (auto* s = std::get_if<SumT>(&t.node().v)) {
    auto* p = std::get_if<SumElem>(&e.node().v);
    if (!p) throw TypeMismatchError("sum expects a tagged element, got " + e.str());
    if (!p->right) return flattenElement(s->left, p->sub);
    auto [slot, leaf] = flattenElement(s->right, p->sub);
    return {slot + leafCount(s->left), std::move(leaf)};
  }
  if (t.isZero()) throw TypeMismatchError("element of the empty order");
  return {0, e};
}

Element unflattenElement(const Term& t, std::size_t slot, Element leaf) {
  if (auto* s = std::get_if<SumT>(&t.node().v)) {
    std::size_t leftCount = leafCount(s->left);
    if (slot < leftCount) return Element::sumLeft(unflattenElement(s->left, slot, std::move(leaf)));
    return Element::sumRight(unflattenElement(s->right, slot - leftCount, std::move(leaf)));
  }
  if (t.isZero() || slot != 0) throw TypeMismatchError("leaf slot out of range");
  return leaf;
}

}  // namespace

OrderedSum::OrderedSum(Term index, Assign assign)
    : index_(std::move(index)), assign_(std::move(assign)), indexStream_(index_) {}

ElementStream& OrderedSum::blockAt(std::size_t idx) const {
  while (blockStreams_.size() <= idx) {
    auto base = indexStream_.at(blockStreams_.size());
    if (!base) throw Error("internal: block requested past the index order");
    Term t = assign_(*base);
    blockStreams_.emplace_back(*base, ElementStream(t));
  }
  return blockStreams_[idx].second;
}

Ordering OrderedSum::cmp(const SumPoint& a, const SumPoint& b) const {
  Ordering byBase = compareElements(index_, a.base, b.base);
  if (byBase != Ordering::Equal) return byBase;
  return compareElements(assign_(a.base), a.inner, b.inner);
}

std::optional<SumPoint> OrderedSum::at(std::size_t k) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::optional<std::size_t> indexLen;
  std::vector<std::optional<std::size_t>> blockLen;
  auto blockLenAt = [&](std::size_t i) -> std::optional<std::size_t>& {
    if (blockLen.size() <= i) blockLen.resize(i + 1);
    return blockLen[i];
  };
  while (!exhausted_ && memo_.size() <= k) {
    // diagonal walk over (index position, within-block index)
    std::size_t d = diag_, off = cursor_;
    if (off > d) {
      ++diag_;
      cursor_ = 0;
      // exhaustion: a finite index order with all blocks finite ends once
      // the memo covers the full cardinality
      if (indexLen) {
        std::size_t total = 0;
        bool allKnown = true;
        for (std::size_t i = 0; i < *indexLen && allKnown; ++i) {
          auto len = blockLenAt(i);
          if (!len) {
            auto probe = blockAt(i).at(memo_.size() + diag_ + 1);
            (void)probe;
            allKnown = false;  // block still alive or unknown; keep walking
          } else {
            total += *len;
          }
        }
        if (allKnown && memo_.size() >= total) exhausted_ = true;
      }
      continue;
    }
    ++cursor_;
    std::size_t bi = off;        // index position
    std::size_t mi = d - off;    // within-block index
    auto base = indexStream_.at(bi);
    if (!base) {
      if (!indexLen) indexLen = bi;  // index order ended at bi
      // fill the observed length exactly
      std::size_t len = bi;
      while (len > 0 && !indexStream_.at(len - 1)) --len;
      indexLen = len;
      continue;
    }
    auto inner = blockAt(bi).at(mi);
    if (!inner) {
      auto& bl = blockLenAt(bi);
      if (!bl) {
        std::size_t len = mi;
        while (len > 0 && !blockAt(bi).at(len - 1)) --len;
        bl = len;
      }
      continue;
    }
    memo_.push_back(SumPoint{*base, *inner});
  }
  if (k < memo_.size()) return memo_[k];
  return std::nullopt;
}

ShufflePresentation makeShuffle(const Palette& palette) {
  requireNormalizedPalette(palette);
  Term t = Term::shuffle(palette.colors);
  DenseColoring coloring = makeDenseColoring(palette);
  return ShufflePresentation{t, std::move(coloring), ElementStream(t)};
}

ColoredOrderView<Element> coloredTermView(const Term& t,
                                          std::function<ColorKey(const Element&)> color) {
  ColoredOrderView<Element> v;
  ElementStream stream(t);
  v.at = [stream](std::size_t k) { return stream.at(k); };
  v.cmp = [t](const Element& a, const Element& b) { return compareElements(t, a, b); };
  v.color = std::move(color);
  return v;
}

ColoredOrderView<Element> plainTermView(const Term& t) {
  return coloredTermView(t, [](const Element&) { return packColor(0, 0); });
}

namespace {

void certifyDenseUnbounded(const WitnessEndpoint& info) {
  if (!info.term) return;
  const Term& t = *info.term;
  auto card = cardinality(t);
  if (card && *card == 0) {
    throw PreconditionViolationError(info.describe + " is empty");
  }
  if (card) {
    throw PreconditionViolationError(info.describe + " is finite (" + std::to_string(*card) +
                                     " elements), so it has endpoints");
  }
  if (hasLeastElement(t)) {
    throw PreconditionViolationError(info.describe + " has a least element");
  }
  if (hasGreatestElement(t)) {
    throw PreconditionViolationError(info.describe + " has a greatest element");
  }
  if (!isDenseOrder(t)) {
    throw PreconditionViolationError(info.describe + " has an adjacent pair");
  }
}

}  // namespace

IsoWitness backAndForth(ColoredOrderView<Element> a, ColoredOrderView<Element> b,
                        WitnessEndpoint srcInfo, WitnessEndpoint dstInfo, IsoWitness::Cmp cmpSrc,
                        IsoWitness::Cmp cmpDst, SessionConfig cfg) {
  certifyDenseUnbounded(srcInfo);
  certifyDenseUnbounded(dstInfo);
  auto session = std::make_shared<Session<Element, Element>>(std::move(a), std::move(b), cfg);
  return IsoWitness([session](const Element& x) { return session->forward(x); },
                    [session](const Element& y) { return session->backward(y); }, std::move(cmpSrc),
                    std::move(cmpDst), std::move(srcInfo), std::move(dstInfo));
}

// ---------------------------------------------------------------------------
// identity witnesses
// ---------------------------------------------------------------------------

namespace {

/// Position of the two-copy sum: (copy, dyadic).
struct CopyPos {
  int copy;
  Rational p;
};

}  // namespace

IsoWitness witnessIdempotence(const Palette& S) {
  requireNormalizedPalette(S);
  Term termB = Term::shuffle(S.colors);
  Term termA = Term::sum(termB, termB);
  auto coloring = canonicalShuffleColoring(S.colors.size());

  ColoredOrderView<CopyPos> viewA;
  viewA.at = [](std::size_t k) -> std::optional<CopyPos> {
    return CopyPos{static_cast<int>(k % 2), dyadicAt(k / 2)};
  };
  viewA.cmp = [](const CopyPos& x, const CopyPos& y) {
    if (x.copy != y.copy) return x.copy < y.copy ? Ordering::Less : Ordering::Greater;
    return compare(x.p, y.p);
  };
  viewA.color = [coloring](const CopyPos& x) { return packColor(0, coloring->colorAt(x.p)); };

  ColoredOrderView<Rational> viewB;
  viewB.at = [](std::size_t k) -> std::optional<Rational> { return dyadicAt(k); };
  viewB.cmp = [](const Rational& x, const Rational& y) { return compare(x, y); };
  viewB.color = [coloring](const Rational& q) { return packColor(0, coloring->colorAt(q)); };

  auto session = std::make_shared<Session<CopyPos, Rational>>(viewA, viewB);

  auto fwd = [session, termA](const Element& x) {
    validateElement(termA, x);
    const auto& sum = std::get<SumElem>(x.node().v);
    const auto& sh = std::get<ShufElem>(sum.sub.node().v);
    Rational image = session->forward(CopyPos{sum.right ? 1 : 0, sh.pos});
    return Element::inShuffle(image, sh.color, sh.sub);
  };
  auto bwd = [session, termB](const Element& y) {
    validateElement(termB, y);
    const auto& sh = std::get<ShufElem>(y.node().v);
    CopyPos pre = session->backward(sh.pos);
    Element block = Element::inShuffle(pre.p, sh.color, sh.sub);
    return pre.copy == 0 ? Element::sumLeft(std::move(block)) : Element::sumRight(std::move(block));
  };

  return IsoWitness(
      fwd, bwd, [termA](const Element& a, const Element& b) { return compareElements(termA, a, b); },
      [termB](const Element& a, const Element& b) { return compareElements(termB, a, b); },
      WitnessEndpoint{termA, termA.str()}, WitnessEndpoint{termB, termB.str()});
}

namespace {

/// Position of copy + distinguished block + copy: zone 0 / 1 (the block) / 2.
struct MidPos {
  int zone;
  Rational p;  // meaningful in zones 0 and 2
};

}  // namespace

IsoWitness witnessAbsorbShuffland(const Palette& S, std::size_t memberIdx) {
  requireNormalizedPalette(S);
  if (memberIdx >= S.colors.size()) throw Error("shuffland index out of palette");
  Term termB = Term::shuffle(S.colors);
  Term mid = S.colors[memberIdx];
  Term termA = Term::sum(termB, Term::sum(mid, termB));
  auto coloring = canonicalShuffleColoring(S.colors.size());

  ColoredOrderView<MidPos> viewA;
  viewA.at = [](std::size_t k) -> std::optional<MidPos> {
    if (k == 0) return MidPos{1, Rational(0)};
    std::size_t r = k - 1;
    return MidPos{r % 2 == 0 ? 0 : 2, dyadicAt(r / 2)};
  };
  viewA.cmp = [](const MidPos& x, const MidPos& y) {
    if (x.zone != y.zone) return x.zone < y.zone ? Ordering::Less : Ordering::Greater;
    if (x.zone == 1) return Ordering::Equal;
    return compare(x.p, y.p);
  };
  viewA.color = [coloring, memberIdx](const MidPos& x) {
    if (x.zone == 1) return packColor(0, memberIdx);
    return packColor(0, coloring->colorAt(x.p));
  };

  ColoredOrderView<Rational> viewB;
  viewB.at = [](std::size_t k) -> std::optional<Rational> { return dyadicAt(k); };
  viewB.cmp = [](const Rational& x, const Rational& y) { return compare(x, y); };
  viewB.color = [coloring](const Rational& q) { return packColor(0, coloring->colorAt(q)); };

  auto session = std::make_shared<Session<MidPos, Rational>>(viewA, viewB);

  auto fwd = [session, termA, memberIdx](const Element& x) {
    validateElement(termA, x);
    const auto& outer = std::get<SumElem>(x.node().v);
    if (!outer.right) {
      const auto& sh = std::get<ShufElem>(outer.sub.node().v);
      Rational image = session->forward(MidPos{0, sh.pos});
      return Element::inShuffle(image, sh.color, sh.sub);
    }
    const auto& inner = std::get<SumElem>(outer.sub.node().v);
    if (!inner.right) {
      Rational image = session->forward(MidPos{1, Rational(0)});
      return Element::inShuffle(image, memberIdx, inner.sub);
    }
    const auto& sh = std::get<ShufElem>(inner.sub.node().v);
    Rational image = session->forward(MidPos{2, sh.pos});
    return Element::inShuffle(image, sh.color, sh.sub);
  };
  auto bwd = [session, termB](const Element& y) {
    validateElement(termB, y);
    const auto& sh = std::get<ShufElem>(y.node().v);
    MidPos pre = session->backward(sh.pos);
    switch (pre.zone) {
      case 0:
        return Element::sumLeft(Element::inShuffle(pre.p, sh.color, sh.sub));
      case 1:
        return Element::sumRight(Element::sumLeft(sh.sub));
      default:
        return Element::sumRight(Element::sumRight(Element::inShuffle(pre.p, sh.color, sh.sub)));
    }
  };

  return IsoWitness(
      fwd, bwd, [termA](const Element& a, const Element& b) { return compareElements(termA, a, b); },
      [termB](const Element& a, const Element& b) { return compareElements(termB, a, b); },
      WitnessEndpoint{termA, termA.str()}, WitnessEndpoint{termB, termB.str()});
}

// ---------------------------------------------------------------------------
// absorbing composite shufflands
// ---------------------------------------------------------------------------

namespace {

/// Refined position of the composite-palette shuffle: atomic block positions
/// stay whole, composite blocks split into an optional left point block, a
/// dense run of inner positions, and an optional right point block.
struct RefinedPos {
  Rational base;
  int kind;  // 0 atomic, 1 left, 2 mid, 3 right
  Rational inner;  // kind == 2 only
};

Ordering cmpRefined(const RefinedPos& x, const RefinedPos& y) {
  Ordering byBase = compare(x.base, y.base);
  if (byBase != Ordering::Equal) return byBase;
  if (x.kind != y.kind) return x.kind < y.kind ? Ordering::Less : Ordering::Greater;
  if (x.kind == 2) return compare(x.inner, y.inner);
  return Ordering::Equal;
}

/// Role of one palette entry of the composite shuffle.
struct PartRole {
  bool atomic;
  std::size_t baseIndex;     // atomic: index in the base palette
  Term composite;            // composite: the full block term
  std::optional<Term> left;  // composite: t1 when nonzero
  std::optional<Term> right; // composite: t2 when nonzero
  std::size_t leftIndex = 0, rightIndex = 0;  // base palette indices
};

}  // namespace

IsoWitness witnessAbsorbSet(const Palette& S, std::vector<std::size_t> keepIdx,
                            std::vector<std::pair<Term, Term>> composites) {
  requireNormalizedPalette(S);
  if (composites.empty()) throw Error("need at least one composite shuffland");
  for (std::size_t i : keepIdx) {
    if (i >= S.colors.size()) throw Error("kept index out of palette");
  }
  Term inner = Term::shuffle(S.colors);

  std::vector<Term> partsRaw;
  for (std::size_t i : keepIdx) partsRaw.push_back(S.colors[i]);
  for (auto& [t1, t2] : composites) {
    for (const Term* t : {&t1, &t2}) {
      if (!t->isZero() && !findTerm(S.colors, *t)) {
        throw Error("composite edge block must lie in the palette or be zero: " + t->str());
      }
    }
    Term block = t2.isZero() ? inner : Term::sum(inner, t2);
    if (!t1.isZero()) block = Term::sum(t1, block);
    partsRaw.push_back(block);
  }
  Term termA = Term::shuffle(partsRaw);
  if (!termA.isShuffle()) throw Error("composite palette collapsed to the empty order");
  const auto& partsA = std::get<ShuffleT>(termA.node().v).parts;

  // Derive each normalized part's role; deduplication may have merged inputs.
  std::vector<PartRole> roles;
  for (const Term& p : partsA) {
    if (auto idx = findTerm(S.colors, p)) {
      roles.push_back(PartRole{true, *idx, p, std::nullopt, std::nullopt});
      continue;
    }
    auto flat = flattenSum(p);
    PartRole role{false, 0, p, std::nullopt, std::nullopt};
    bool ok = false;
    if (flat.size() == 1 && sameTerm(flat[0], inner)) {
      ok = true;
    } else if (flat.size() == 2 && sameTerm(flat[0], inner)) {
      role.right = flat[1];
      ok = true;
    } else if (flat.size() == 2 && sameTerm(flat[1], inner)) {
      role.left = flat[0];
      ok = true;
    } else if (flat.size() == 3 && sameTerm(flat[1], inner)) {
      role.left = flat[0];
      role.right = flat[2];
      ok = true;
    }
    if (!ok) throw Error("shuffland is neither in the palette nor a composite block: " + p.str());
    if (role.left) role.leftIndex = *findTerm(S.colors, *role.left);
    if (role.right) role.rightIndex = *findTerm(S.colors, *role.right);
    roles.push_back(std::move(role));
  }

  auto coloringA = canonicalShuffleColoring(partsA.size());
  auto coloringB = canonicalShuffleColoring(S.colors.size());
  auto rolesPtr = std::make_shared<std::vector<PartRole>>(std::move(roles));

  ColoredOrderView<RefinedPos> viewA;
  viewA.at = [coloringA, rolesPtr](std::size_t k) -> std::optional<RefinedPos> {
    // diagonal over (base index, refinement selector); invalid selectors are
    // skipped by returning the next valid attempt deterministically
    static_cast<void>(0);
    std::size_t d = 0, consumed = 0;
    for (d = 0;; ++d) {
      for (std::size_t jb = 0; jb <= d; ++jb) {
        std::size_t sel = d - jb;
        Rational base = dyadicAt(jb);
        const PartRole& role = (*rolesPtr)[coloringA->colorAt(base)];
        std::optional<RefinedPos> pos;
        if (role.atomic) {
          if (sel == 0) pos = RefinedPos{base, 0, Rational(0)};
        } else if (sel == 0) {
          if (role.left) pos = RefinedPos{base, 1, Rational(0)};
        } else if (sel == 1) {
          if (role.right) pos = RefinedPos{base, 3, Rational(0)};
        } else {
          pos = RefinedPos{base, 2, dyadicAt(sel - 2)};
        }
        if (pos) {
          if (consumed == k) return pos;
          ++consumed;
        }
      }
    }
  };
  viewA.cmp = [](const RefinedPos& x, const RefinedPos& y) { return cmpRefined(x, y); };
  viewA.color = [coloringA, coloringB, rolesPtr](const RefinedPos& x) {
    const PartRole& role = (*rolesPtr)[coloringA->colorAt(x.base)];
    switch (x.kind) {
      case 0:
        return packColor(0, role.baseIndex);
      case 1:
        return packColor(0, role.leftIndex);
      case 3:
        return packColor(0, role.rightIndex);
      default:
        return packColor(0, coloringB->colorAt(x.inner));
    }
  };

  ColoredOrderView<Rational> viewB;
  viewB.at = [](std::size_t k) -> std::optional<Rational> { return dyadicAt(k); };
  viewB.cmp = [](const Rational& x, const Rational& y) { return compare(x, y); };
  viewB.color = [coloringB](const Rational& q) { return packColor(0, coloringB->colorAt(q)); };

  auto session = std::make_shared<Session<RefinedPos, Rational>>(viewA, viewB);
  Term termB = inner;

  auto fwd = [session, termA, coloringA, rolesPtr](const Element& x) {
    validateElement(termA, x);
    const auto& sh = std::get<ShufElem>(x.node().v);
    const PartRole& role = (*rolesPtr)[sh.color];
    if (role.atomic) {
      Rational image = session->forward(RefinedPos{sh.pos, 0, Rational(0)});
      return Element::inShuffle(image, role.baseIndex, sh.sub);
    }
    auto [slot, leaf] = flattenElement(role.composite, sh.sub);
    std::size_t innerSlot = role.left ? 1 : 0;
    if (role.left && slot == 0) {
      Rational image = session->forward(RefinedPos{sh.pos, 1, Rational(0)});
      return Element::inShuffle(image, role.leftIndex, leaf);
    }
    if (slot == innerSlot) {
      const auto& mid = std::get<ShufElem>(leaf.node().v);
      Rational image = session->forward(RefinedPos{sh.pos, 2, mid.pos});
      return Element::inShuffle(image, mid.color, mid.sub);
    }
    Rational image = session->forward(RefinedPos{sh.pos, 3, Rational(0)});
    return Element::inShuffle(image, role.rightIndex, leaf);
  };
  auto bwd = [session, termA, termB, coloringA, coloringB, rolesPtr](const Element& y) {
    validateElement(termB, y);
    const auto& sh = std::get<ShufElem>(y.node().v);
    RefinedPos pre = session->backward(sh.pos);
    std::size_t colorA = coloringA->colorAt(pre.base);
    const PartRole& role = (*rolesPtr)[colorA];
    if (pre.kind == 0) {
      return Element::inShuffle(pre.base, colorA, sh.sub);
    }
    std::size_t innerSlot = role.left ? 1 : 0;
    if (pre.kind == 1) {
      return Element::inShuffle(pre.base, colorA, unflattenElement(role.composite, 0, sh.sub));
    }
    if (pre.kind == 2) {
      Element mid = Element::inShuffle(pre.inner, coloringB->colorAt(pre.inner), sh.sub);
      return Element::inShuffle(pre.base, colorA,
                                unflattenElement(role.composite, innerSlot, std::move(mid)));
    }
    std::size_t rightSlot = innerSlot + 1;
    return Element::inShuffle(pre.base, colorA,
                              unflattenElement(role.composite, rightSlot, sh.sub));
  };

  return IsoWitness(
      fwd, bwd, [termA](const Element& a, const Element& b) { return compareElements(termA, a, b); },
      [termB](const Element& a, const Element& b) { return compareElements(termB, a, b); },
      WitnessEndpoint{termA, termA.str()}, WitnessEndpoint{termB, termB.str()});
}

}  // namespace shuffles
