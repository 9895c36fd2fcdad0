#include "shuffles/staged_coloring.hpp"

#include <cmath>

#include "shuffles/dyadic.hpp"
#include "shuffles/errors.hpp"

namespace shuffles {

PointEnumeration allDyadicPoints() {
  PointEnumeration e;
  e.at = [](std::size_t k) { return dyadicAt(k); };
  e.indexOf = [](const Rational& q) {
    auto i = dyadicIndex(q);
    if (!i) throw Error("point is not a dyadic in (0,1): " + q.str());
    return *i;
  };
  return e;
}

namespace {

std::pair<std::size_t, std::size_t> cantorUnpair(std::size_t t) {
  std::size_t w = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > t) --w;
  while ((w + 1) * (w + 2) / 2 <= t) ++w;
  std::size_t rest = t - w * (w + 1) / 2;
  return {rest, w - rest};
}

}  // namespace

StagedColoring::StagedColoring(PointEnumeration points, std::optional<std::size_t> paletteSize,
                               int variant)
    : points_(std::move(points)), paletteSize_(paletteSize), variant_(variant) {
  if (paletteSize_ && *paletteSize_ == 0) throw EmptyPaletteError();
}

std::pair<std::size_t, std::size_t> StagedColoring::pairAt(std::size_t t) const {
  // Pairs (x, y) with x < y, grouped by y = 1, 2, ...; within a group the
  // x offset runs ascending (variant 0) or descending (variant 1).
  std::size_t y = 1;
  std::size_t before = 0;
  while (t - before >= y) {
    before += y;
    ++y;
  }
  std::size_t off = t - before;
  std::size_t x = (variant_ % 2 == 0) ? off : (y - 1 - off);
  return {x, y};
}

StagedColoring::Stage StagedColoring::stageTarget(std::size_t t) const {
  if (paletteSize_) {
    return Stage{t / *paletteSize_, t % *paletteSize_};
  }
  auto [a, b] = cantorUnpair(t);
  return Stage{a, b};
}

void StagedColoring::replayTo(std::size_t stage) const {
  auto pointAt = [&](std::size_t k) -> const Rational& {
    while (pointCache_.size() <= k) pointCache_.push_back(points_.at(pointCache_.size()));
    return pointCache_[k];
  };
  while (nextStage_ <= stage) {
    std::size_t t = nextStage_;
    Stage target = stageTarget(t);
    auto [xi, yi] = pairAt(target.intervalIndex);
    Rational a = pointAt(xi);
    Rational b = pointAt(yi);
    if (b < a) std::swap(a, b);
    for (std::size_t k = 0;; ++k) {
      const Rational& p = pointAt(k);
      if (a < p && p < b && assigned_.find(p) == assigned_.end()) {
        assigned_.emplace(p, target.color);
        break;
      }
    }
    const Rational& own = pointAt(t);
    assigned_.emplace(own, 0);  // no effect when already assigned
    ++nextStage_;
  }
}

std::size_t StagedColoring::colorAt(const Rational& q) const {
  std::size_t idx = points_.indexOf(q);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = assigned_.find(q);
  if (it != assigned_.end()) return it->second;
  replayTo(idx);
  return assigned_.at(q);
}

StagedColoring::DensityWitness StagedColoring::densityWitness(const Rational& lo,
                                                              const Rational& hi,
                                                              std::size_t color,
                                                              std::size_t scanCap) const {
  if (!(lo < hi)) throw Error("density witness wants a nonempty interval");
  if (paletteSize_ && color >= *paletteSize_) throw Error("color index out of palette");
  std::lock_guard<std::mutex> lock(mu_);
  auto pointAt = [&](std::size_t k) -> const Rational& {
    while (pointCache_.size() <= k) pointCache_.push_back(points_.at(pointCache_.size()));
    return pointCache_[k];
  };
  // Find the first interval in the schedule that fits strictly inside (lo, hi).
  for (std::size_t t = 0; t < scanCap; ++t) {
    auto [xi, yi] = pairAt(t);
    Rational a = pointAt(xi);
    Rational b = pointAt(yi);
    if (b < a) std::swap(a, b);
    if (lo < a && b < hi) {
      std::size_t stage =
          paletteSize_ ? t * *paletteSize_ + color
                       : (t + color) * (t + color + 1) / 2 + t;  // cantorPair(t, color)
      replayTo(stage);
      // That stage deliberately put `color` somewhere strictly inside (a, b).
      for (auto it = assigned_.upper_bound(a); it != assigned_.end() && it->first < b; ++it) {
        if (it->second == color) return DensityWitness{it->first, stage};
      }
      throw Error("internal: staged assignment missing");
    }
  }
  throw SearchBudgetExceededError("no framing interval inside (" + lo.str() + ", " + hi.str() + ")");
}

std::shared_ptr<const StagedColoring> canonicalShuffleColoring(std::size_t paletteSize) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const StagedColoring>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(paletteSize);
  if (it != cache.end()) return it->second;
  auto c = std::make_shared<const StagedColoring>(allDyadicPoints(), paletteSize, 0);
  cache.emplace(paletteSize, c);
  return c;
}

}  // namespace shuffles
