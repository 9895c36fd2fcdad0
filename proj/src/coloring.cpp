#include "shuffles/coloring.hpp"

#include <mutex>

#include "shuffles/dyadic.hpp"
#include "shuffles/errors.hpp"

namespace shuffles {

DenseColoring makeDenseColoring(Palette palette, int variant) {
  if (palette.colors.empty()) throw EmptyPaletteError();
  auto core = std::make_shared<StagedColoring>(allDyadicPoints(), palette.size(), variant);
  return DenseColoring(
      std::move(palette), [core](const Rational& q) { return core->colorAt(q); },
      [core](const Rational& lo, const Rational& hi, std::size_t c) {
        return core->densityWitness(lo, hi, c);
      });
}

namespace {

/// The shared fiber-membership stage: two colors over all dyadics, color 1
/// marking the sentinel fiber.
std::shared_ptr<const StagedColoring> fiberBase() {
  static std::shared_ptr<const StagedColoring> base =
      std::make_shared<const StagedColoring>(allDyadicPoints(), 2, 0);
  return base;
}

}  // namespace

struct SentinelFiber::Cache {
  std::shared_ptr<const StagedColoring> base = fiberBase();
  std::mutex mu;
  std::vector<Rational> members;
  std::vector<Rational> complement;
  std::size_t scanned = 0;

  void scanUntil(bool member, std::size_t count) {
    std::lock_guard<std::mutex> lock(mu);
    auto& vec = member ? members : complement;
    while (vec.size() <= count) {
      Rational q = dyadicAt(scanned++);
      (base->colorAt(q) == 1 ? members : complement).push_back(q);
    }
  }
};

SentinelFiber::SentinelFiber() : cache_(std::make_shared<Cache>()) {}

bool SentinelFiber::contains(const Rational& dyadic) const {
  return cache_->base->colorAt(dyadic) == 1;
}

Rational SentinelFiber::at(std::size_t k) const {
  cache_->scanUntil(true, k);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->members[k];
}

Rational SentinelFiber::complementAt(std::size_t k) const {
  cache_->scanUntil(false, k);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->complement[k];
}

std::size_t SentinelFiber::indexOf(const Rational& q) const {
  if (!contains(q)) throw NotInRError(q.str());
  for (std::size_t k = 0;; ++k) {
    if (at(k) == q) return k;
  }
}

std::size_t SentinelFiber::complementIndexOf(const Rational& q) const {
  if (contains(q)) throw Error("dyadic lies in the sentinel fiber: " + q.str());
  for (std::size_t k = 0;; ++k) {
    if (complementAt(k) == q) return k;
  }
}

PointEnumeration SentinelFiber::complementPoints() const {
  PointEnumeration e;
  SentinelFiber self = *this;  // shares the cache
  e.at = [self](std::size_t k) { return self.complementAt(k); };
  e.indexOf = [self](const Rational& q) { return self.complementIndexOf(q); };
  return e;
}

SharedSentinelColorings makeSharedSentinelColorings(Palette a, Palette b) {
  for (const Palette* p : {&a, &b}) {
    if (!p->sentinel || *p->sentinel >= p->colors.size()) throw SentinelMissingError();
    if (p->colors.size() < 2) {
      throw PreconditionViolationError("sentinel palette needs at least one more color");
    }
  }
  SentinelFiber fiber;

  auto side = [&fiber](const Palette& p, int variant) {
    std::size_t sentinelIdx = *p.sentinel;
    std::size_t others = p.colors.size() - 1;
    auto nested = std::make_shared<StagedColoring>(fiber.complementPoints(), others, variant);
    // nested color j maps to the j-th non-sentinel palette index
    auto mapIdx = [sentinelIdx](std::size_t j) { return j < sentinelIdx ? j : j + 1; };
    auto colorAt = [fiber, nested, sentinelIdx, mapIdx](const Rational& q) {
      if (fiber.contains(q)) return sentinelIdx;
      return mapIdx(nested->colorAt(q));
    };
    auto witness = [nested, sentinelIdx](const Rational& lo, const Rational& hi, std::size_t c) {
      if (c == sentinelIdx) {
        return fiberBase()->densityWitness(lo, hi, 1);
      }
      std::size_t j = c < sentinelIdx ? c : c - 1;
      return nested->densityWitness(lo, hi, j);
    };
    return DenseColoring(p, colorAt, witness);
  };

  SharedSentinelColorings out{side(a, 0), side(b, 0), fiber};
  return out;
}

}  // namespace shuffles
