#include <doctest.h>
#include <set>
#include <string>
#include <vector>

#include "shuffles/dyadic.hpp"
#include "shuffles/element.hpp"
#include "shuffles/errors.hpp"
#include "shuffles/ext_rational.hpp"
#include "shuffles/rational.hpp"
#include "shuffles/staged_coloring.hpp"
#include "shuffles/term.hpp"

using namespace shuffles;

TEST_CASE("rational canonical form and comparison") {
  Rational a(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 2) < Rational(0));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::parse("-3/9").value() == Rational(-1, 3));
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("x").has_value());
  CHECK(Rational(3, 8).isDyadic());
  CHECK(!Rational(1, 3).isDyadic());
}

TEST_CASE("extended rationals order") {
  ExtRational lo = ExtRational::negInf();
  ExtRational hi = ExtRational::posInf();
  ExtRational mid{Rational(1, 2)};
  CHECK(compare(lo, mid) == Ordering::Less);
  CHECK(compare(mid, hi) == Ordering::Less);
  CHECK(compare(lo, hi) == Ordering::Less);
  CHECK(compare(mid, mid) == Ordering::Equal);
  CHECK(compare(hi, hi) == Ordering::Equal);
}

TEST_CASE("dyadic schedule") {
  CHECK(dyadicAt(0) == Rational(1, 2));
  CHECK(dyadicAt(1) == Rational(1, 4));
  CHECK(dyadicAt(2) == Rational(3, 4));
  CHECK(dyadicAt(3) == Rational(1, 8));
  CHECK(dyadicAt(6) == Rational(7, 8));
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(dyadicIndex(dyadicAt(k)).value() == k);
  }
  CHECK(!dyadicIndex(Rational(1, 3)).has_value());
  CHECK(!dyadicIndex(Rational(3, 2)).has_value());
  auto w = DyadicWord::fromValue(Rational(3, 8)).value();
  CHECK(w.str() == "011");
  CHECK(w.value() == Rational(3, 8));
  CHECK(w.isOrderElement());
}

TEST_CASE("parse: grammar basics") {
  CHECK(parseTerm("shuffle{1,2}").str() == "shuffle{1,2}");
  CHECK(parseTerm("rev(w)+1").str() == "rev(w)+1");
  CHECK(parseTerm(" 1 + 2 + 3 ").str() == "1+2+3");
  CHECK(parseTerm("Q").str() == "Q");
  CHECK(sameTerm(parseTerm("1+2+3"), Term::sum(Term::sum(Term::finite(1), Term::finite(2)), Term::finite(3))));
  CHECK_THROWS_AS(parseTerm("shuffle{}"), EmptyShuffleError);
  CHECK_THROWS_AS(parseTerm("rev(1"), ParseError);
  CHECK_THROWS_AS(parseTerm("1+"), ParseError);
  CHECK_THROWS_AS(parseTerm("hello"), ParseError);
  CHECK_THROWS_AS(parseTerm("1 2"), ParseError);
}

TEST_CASE("parse: shuffle normalization") {
  // a zero shuffland never changes a shuffle
  CHECK(sameTerm(parseTerm("shuffle{0,1}"), parseTerm("shuffle{1}")));
  // structural duplicates collapse
  CHECK(sameTerm(parseTerm("shuffle{1,1,2}"), parseTerm("shuffle{1,2}")));
  // shuffle of nothing but zeros is the empty order
  CHECK(parseTerm("shuffle{0}").isZero());
  CHECK(parseTerm("shuffle{0,0}").isZero());
  // nested normalization
  CHECK(sameTerm(parseTerm("shuffle{shuffle{0,1},2}"), parseTerm("shuffle{shuffle{1},2}")));
}

TEST_CASE("parse error positions") {
  try {
    parseTerm("1 +\n  %");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 3);
  }
}

TEST_CASE("structural term order") {
  CHECK(sameTerm(parseTerm("rev(rev(w))"), Term::reverse(Term::reverse(Term::omega()))));
  CHECK(!sameTerm(parseTerm("w"), parseTerm("Q")));
  CHECK(compareTerms(parseTerm("1"), parseTerm("2")) == Ordering::Less);
}

TEST_CASE("cardinality and structural facts") {
  CHECK(cardinality(parseTerm("0")).value() == 0);
  CHECK(cardinality(parseTerm("3")).value() == 3);
  CHECK(!cardinality(parseTerm("w")).has_value());
  CHECK(cardinality(parseTerm("2+3")).value() == 5);
  CHECK(!cardinality(parseTerm("shuffle{1}")).has_value());
  CHECK(hasLeastElement(parseTerm("w")));
  CHECK(!hasGreatestElement(parseTerm("w")));
  CHECK(hasGreatestElement(parseTerm("rev(w)")));
  CHECK(!hasLeastElement(parseTerm("shuffle{1}")));
  CHECK(isDenseOrder(parseTerm("Q")));
  CHECK(isDenseOrder(parseTerm("shuffle{1}")));
  CHECK(!isDenseOrder(parseTerm("shuffle{2}")));
  CHECK(!isDenseOrder(parseTerm("w")));
}

TEST_CASE("compare: sum, reverse, shuffle examples") {
  Term two1 = Term::sum(Term::finite(1), Term::finite(1));
  CHECK(compareElements(two1, Element::sumLeft(Element::nat(0)), Element::sumRight(Element::nat(0))) ==
        Ordering::Less);

  Term revw = Term::reverse(Term::omega());
  CHECK(compareElements(revw, Element::reversed(Element::nat(3)), Element::reversed(Element::nat(5))) ==
        Ordering::Greater);

  Term sh2 = parseTerm("shuffle{2}");
  Rational pos(1, 2);
  std::size_t c = canonicalShuffleColoring(1)->colorAt(pos);
  CHECK(c == 0);
  Element a = Element::inShuffle(pos, 0, Element::nat(0));
  Element b = Element::inShuffle(pos, 0, Element::nat(1));
  CHECK(compareElements(sh2, a, b) == Ordering::Less);
}

TEST_CASE("compare: type mismatches are rejected") {
  CHECK_THROWS_AS(compareElements(parseTerm("2"), Element::nat(0), Element::nat(2)), TypeMismatchError);
  CHECK_THROWS_AS(compareElements(parseTerm("w"), Element::rational(Rational(1, 2)), Element::nat(0)),
                  TypeMismatchError);
  CHECK_THROWS_AS(validateElement(parseTerm("0"), Element::nat(0)), TypeMismatchError);
  // a wrong shuffle color is a malformed address even at a valid position
  Term sh = parseTerm("shuffle{1,2}");
  std::size_t right = canonicalShuffleColoring(2)->colorAt(Rational(1, 2));
  std::size_t wrong = 1 - right;
  CHECK_THROWS_AS(validateElement(sh, Element::inShuffle(Rational(1, 2), wrong, Element::nat(0))),
                  TypeMismatchError);
}

TEST_CASE("reverse semantics") {
  Term two = Term::finite(2);
  CHECK(reverseSemantics(two, Element::reversed(Element::nat(0)), Element::reversed(Element::nat(1))) ==
        Ordering::Greater);
  // double reversal agrees with the original comparison
  Term rrw = Term::reverse(Term::reverse(Term::omega()));
  for (std::uint64_t i = 0; i < 10; ++i) {
    for (std::uint64_t j = 0; j < 10; ++j) {
      Element a = Element::reversed(Element::reversed(Element::nat(i)));
      Element b = Element::reversed(Element::reversed(Element::nat(j)));
      CHECK(compareElements(rrw, a, b) == compareElements(Term::omega(), Element::nat(i), Element::nat(j)));
    }
  }
}

TEST_CASE("element JSON round trip") {
  Element e = Element::sumRight(
      Element::inShuffle(Rational(1, 2), 0, Element::reversed(Element::rational(Rational(-2, 3)))));
  Element back = elementFromJson(elementToJson(e));
  CHECK(structurallyEqual(e, back));
  CHECK(elementToJson(Element::nat(7)) == "7");
}

TEST_CASE("staged coloring: constant for singleton palette") {
  auto c = canonicalShuffleColoring(1);
  for (std::size_t k = 0; k < 32; ++k) {
    CHECK(c->colorAt(dyadicAt(k)) == 0);
  }
}

TEST_CASE("staged coloring: both fibers appear early for two colors") {
  auto c = canonicalShuffleColoring(2);
  bool seen0 = false, seen1 = false;
  for (std::size_t k = 0; k < 50; ++k) {
    std::size_t col = c->colorAt(dyadicAt(k));
    if (col == 0) seen0 = true;
    if (col == 1) seen1 = true;
  }
  CHECK(seen0);
  CHECK(seen1);
}

TEST_CASE("staged coloring: density witness inside (1/4, 3/8)") {
  auto c = canonicalShuffleColoring(2);
  auto w = c->densityWitness(Rational(1, 4), Rational(3, 8), 1);
  CHECK(Rational(1, 4) < w.point);
  CHECK(w.point < Rational(3, 8));
  CHECK(c->colorAt(w.point) == 1);
}

TEST_CASE("staged coloring: deterministic across instances") {
  StagedColoring a(allDyadicPoints(), 3, 0);
  StagedColoring b(allDyadicPoints(), 3, 0);
  for (std::size_t k = 0; k < 64; ++k) {
    CHECK(a.colorAt(dyadicAt(k)) == b.colorAt(dyadicAt(k)));
  }
  StagedColoring other(allDyadicPoints(), 3, 1);
  bool differs = false;
  for (std::size_t k = 0; k < 64 && !differs; ++k) {
    differs = other.colorAt(dyadicAt(k)) != a.colorAt(dyadicAt(k));
  }
  CHECK(differs);
}

#include "shuffles/embed.hpp"
#include "shuffles/enumerate.hpp"

TEST_CASE("rational enumeration covers small fractions early") {
  CHECK(rationalAt(0) == Rational(0));
  CHECK(rationalAt(1) == Rational(1));
  CHECK(rationalAt(2) == Rational(-1));
  std::set<std::string> seen;
  bool injective = true;
  // Diagonal |p| + q reaches 63/64 at |p|+q = 127; every entry up to there
  // sits within the first 10^4 indices.
  for (std::size_t k = 0; k < 10000; ++k) {
    injective = seen.insert(rationalAt(k).str()).second && injective;
  }
  CHECK(injective);
  // every dyadic with denominator <= 64 in (0,1) appears in the prefix
  for (std::size_t k = 0; k < 127; ++k) {
    Rational d = dyadicAt(k);
    if (d.denominator() > 64) continue;
    CHECK(seen.count(d.str()) == 1);
  }
}

TEST_CASE("enumerate: zero and finite orders") {
  ElementStream z(parseTerm("0"));
  CHECK(!z.at(0).has_value());
  ElementStream f(parseTerm("3"));
  std::set<std::uint64_t> got;
  for (std::size_t k = 0; k < 3; ++k) {
    auto e = f.at(k);
    REQUIRE(e.has_value());
    got.insert(std::get<NatElem>(e->node().v).index);
  }
  CHECK(got == std::set<std::uint64_t>{0, 1, 2});
  CHECK(!f.at(3).has_value());
}

TEST_CASE("enumerate: sum drains a finite side") {
  ElementStream s(parseTerm("2+w"));
  int left = 0, right = 0;
  for (std::size_t k = 0; k < 30; ++k) {
    auto e = s.at(k);
    REQUIRE(e.has_value());
    if (std::get<SumElem>(e->node().v).right) ++right; else ++left;
  }
  CHECK(left == 2);
  CHECK(right == 28);
}

TEST_CASE("enumerate: shuffle dovetails positions") {
  ElementStream s(parseTerm("shuffle{1}"));
  std::set<std::string> positions;
  for (std::size_t k = 0; k < 100; ++k) {
    auto e = s.at(k);
    REQUIRE(e.has_value());
    positions.insert(std::get<ShufElem>(e->node().v).pos.str());
  }
  CHECK(positions.size() >= 2);
  // all elements well-typed and distinct
  ElementStream t(parseTerm("shuffle{1,2}"));
  for (std::size_t k = 0; k < 60; ++k) {
    auto e = t.at(k);
    REQUIRE(e.has_value());
    validateElement(t.term(), *e);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(!structurallyEqual(*t.at(j), *e));
    }
  }
}

TEST_CASE("embed: omega is monotone and invertible") {
  RationalEmbedding emb(parseTerm("w"));
  Rational prev(0);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rational r = emb.forward(Element::nat(k));
    CHECK(prev < r);
    CHECK(r < Rational(1));
    auto back = emb.invert(r);
    REQUIRE(back.has_value());
    CHECK(structurallyEqual(*back, Element::nat(k)));
    prev = r;
  }
  CHECK(!emb.invert(Rational(1, 3)).has_value());  // 1/3 is not (k+1)/(k+2)
}

TEST_CASE("embed: sum keeps left below right") {
  Term t = parseTerm("1+1");
  RationalEmbedding emb(t);
  CHECK(emb.forward(Element::sumLeft(Element::nat(0))) < emb.forward(Element::sumRight(Element::nat(0))));
  CHECK(!emb.invert(Rational(1, 2)).has_value());  // the cut is not hit
}

TEST_CASE("embed: roundtrip and monotonicity on a corpus") {
  for (const char* txt : {"3", "w", "rev(w)", "Q", "w+rev(w)", "shuffle{1}", "shuffle{1,2}",
                          "shuffle{2,w}", "rev(shuffle{1,w})+Q"}) {
    Term t = parseTerm(txt);
    ElementStream s(t);
    RationalEmbedding emb(t);
    std::vector<Element> xs;
    for (std::size_t k = 0; k < 60; ++k) {
      auto e = s.at(k);
      if (!e) break;
      xs.push_back(*e);
    }
    for (const auto& x : xs) {
      Rational r = emb.forward(x);
      CHECK(Rational(0) < r);
      CHECK(r < Rational(1));
      auto back = emb.invert(r);
      REQUIRE(back.has_value());
      CHECK(structurallyEqual(*back, x));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        Ordering byOrder = compareElements(t, xs[i], xs[j]);
        Ordering byImage = compare(emb.forward(xs[i]), emb.forward(xs[j]));
        CHECK(byOrder == byImage);
      }
    }
  }
}

TEST_CASE("embed: decode rejects periodic expansions") {
  CHECK(!decodeShuffleBlock(Rational(1, 5)).has_value());   // 0.030303... base 4
  CHECK(!decodeShuffleBlock(Rational(1, 3)).has_value());   // 0.010101... base 4
  CHECK(!decodeShuffleBlock(Rational(0)).has_value());
  auto d = decodeShuffleBlock(shuffleBlockLow(DyadicWord{{true}}) + Rational(1, 2) * shuffleBlockScale(DyadicWord{{true}}));
  REQUIRE(d.has_value());
  CHECK(d->word.str() == "1");
  CHECK(d->rest == Rational(1, 2));
}

TEST_CASE("reverse enumeration has no least element among samples") {
  Term t = parseTerm("rev(w)");
  ElementStream s(t);
  // the running minimum keeps dropping: the least of the first N samples is
  // never least overall
  for (std::size_t n = 1; n <= 100; ++n) {
    Element minOfFirstN = *s.at(0);
    for (std::size_t k = 1; k < n; ++k) {
      if (compareElements(t, *s.at(k), minOfFirstN) == Ordering::Less) minOfFirstN = *s.at(k);
    }
    bool beaten = false;
    for (std::size_t k = 0; k < n + 2 && !beaten; ++k) {
      beaten = compareElements(t, *s.at(k), minOfFirstN) == Ordering::Less;
    }
    CHECK(beaten);
  }
}
