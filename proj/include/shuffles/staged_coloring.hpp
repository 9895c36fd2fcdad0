#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "shuffles/rational.hpp"

namespace shuffles {

/// Injective enumeration of rationals whose image is dense in itself.
struct PointEnumeration {
  std::function<Rational(std::size_t)> at;
  /// Index of a point known to lie in the image.
  std::function<std::size_t(const Rational&)> indexOf;
};

/// The fixed enumeration of all dyadics in (0,1).
PointEnumeration allDyadicPoints();

/// Deterministic staged construction of a dense coloring of the enumerated
/// points. Stage t targets one (interval, color) pair and assigns that color
/// to the least-index unassigned point inside the interval, then assigns
/// point t itself (if still free) to color 0. Every point is therefore
/// colored by stage max(index, ...) and every color meets every interval.
class StagedColoring {
 public:
  /// paletteSize nullopt means a countably infinite palette (colors indexed
  /// by naturals). `variant` selects between distinct but equally valid
  /// interval schedules (used to build independent colorings).
  StagedColoring(PointEnumeration points, std::optional<std::size_t> paletteSize,
                 int variant = 0);

  /// Color of a point in the enumeration's image. Terminates by stage
  /// indexOf(q) at the latest.
  std::size_t colorAt(const Rational& q) const;

  struct DensityWitness {
    Rational point;
    std::size_t stageBound;  // stage at which the witness was assigned
  };

  /// A point strictly inside (lo, hi) carrying `color`, together with the
  /// replay bound that produced it. Requires at least two enumerated points
  /// inside the interval; scanCap bounds the search for the framing pair.
  DensityWitness densityWitness(const Rational& lo, const Rational& hi, std::size_t color,
                                std::size_t scanCap = 1 << 20) const;

  std::optional<std::size_t> paletteSize() const { return paletteSize_; }
  const PointEnumeration& points() const { return points_; }

 private:
  struct Stage {
    std::size_t intervalIndex;
    std::size_t color;
  };
  Stage stageTarget(std::size_t t) const;
  std::pair<std::size_t, std::size_t> pairAt(std::size_t t) const;  // (x, y), x != y
  void replayTo(std::size_t stage) const;  // caller holds mu_

  PointEnumeration points_;
  std::optional<std::size_t> paletteSize_;
  int variant_;

  mutable std::mutex mu_;
  mutable std::map<Rational, std::size_t> assigned_;
  mutable std::vector<Rational> pointCache_;
  mutable std::size_t nextStage_ = 0;
};

/// Memoized canonical coloring of all dyadics for a given palette size;
/// shuffle terms with equally many parts share one coloring.
std::shared_ptr<const StagedColoring> canonicalShuffleColoring(std::size_t paletteSize);

}  // namespace shuffles
