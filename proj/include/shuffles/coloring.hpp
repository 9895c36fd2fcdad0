#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "shuffles/staged_coloring.hpp"
#include "shuffles/term.hpp"

namespace shuffles {

/// Indexed family of shufflands, optionally with a designated sentinel color.
struct Palette {
  std::vector<Term> colors;
  std::optional<std::size_t> sentinel;

  std::size_t size() const { return colors.size(); }
};

/// Total computable coloring of the dyadics in (0,1) by palette indices, with
/// every fiber dense. Construction is deterministic per palette (and variant).
class DenseColoring {
 public:
  using ColorFn = std::function<std::size_t(const Rational&)>;
  using WitnessFn = std::function<StagedColoring::DensityWitness(const Rational&, const Rational&,
                                                                 std::size_t)>;

  DenseColoring(Palette palette, ColorFn colorAt, WitnessFn witness)
      : palette_(std::move(palette)), colorAt_(std::move(colorAt)), witness_(std::move(witness)) {}

  const Palette& palette() const { return palette_; }
  std::size_t colorAt(const Rational& dyadic) const { return colorAt_(dyadic); }

  /// A dyadic strictly inside (lo, hi) carrying the color, plus the replay
  /// bound that produced it.
  StagedColoring::DensityWitness densityWitness(const Rational& lo, const Rational& hi,
                                                std::size_t color) const {
    return witness_(lo, hi, color);
  }

 private:
  Palette palette_;
  ColorFn colorAt_;
  WitnessFn witness_;
};

/// Deterministic dense coloring by the whole palette. `variant` switches to a
/// different (equally valid) schedule, giving independent colorings.
DenseColoring makeDenseColoring(Palette palette, int variant = 0);

/// The sentinel fiber shared by a pair of colorings: a decidable dense set of
/// dyadics with dense complement, plus schedule-order enumerations of both.
class SentinelFiber {
 public:
  SentinelFiber();

  bool contains(const Rational& dyadic) const;
  Rational at(std::size_t k) const;              // k-th fiber member
  Rational complementAt(std::size_t k) const;    // k-th non-member
  std::size_t indexOf(const Rational& q) const;  // within the fiber
  std::size_t complementIndexOf(const Rational& q) const;

  PointEnumeration complementPoints() const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct SharedSentinelColorings {
  DenseColoring pos;
  DenseColoring neg;
  SentinelFiber fiber;
};

/// Two dense colorings whose sentinel fibers coincide exactly: a shared
/// two-color stage decides fiber membership, then each side's remaining
/// colors are laid out on the complement by a nested staged coloring.
/// Both palettes must contain their sentinel and at least one more color.
SharedSentinelColorings makeSharedSentinelColorings(Palette a, Palette b);

}  // namespace shuffles
