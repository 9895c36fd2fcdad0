#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shuffles/errors.hpp"
#include "shuffles/ordering.hpp"

namespace shuffles {

/// Color tags only ever need equality; callers agree on a packing.
using ColorKey = std::uint64_t;

inline ColorKey packColor(std::uint32_t kind, std::uint32_t index) {
  return (static_cast<std::uint64_t>(kind) << 32) | index;
}

/// A countable linear order presented by enumeration and comparison.
template <class P>
struct OrderView {
  std::function<std::optional<P>(std::size_t)> at;
  std::function<Ordering(const P&, const P&)> cmp;
};

/// A presented order together with a total coloring.
template <class P>
struct ColoredOrderView {
  std::function<std::optional<P>(std::size_t)> at;
  std::function<Ordering(const P&, const P&)> cmp;
  std::function<ColorKey(const P&)> color;
};

struct SessionConfig {
  std::size_t partnerScanCap = 1u << 20;
  bool auditEachStep = false;
};

/// Back-and-forth construction of a color-preserving order isomorphism
/// between two countable dense unbounded colored orders. The matched table
/// is a finite order- and color-preserving bijection at every stage; ties
/// are always broken toward the least enumeration index, so identical
/// inputs replay to identical tables.
template <class PA, class PB>
class Session {
 public:
  Session(ColoredOrderView<PA> a, ColoredOrderView<PB> b, SessionConfig cfg = {})
      : a_(std::move(a)), b_(std::move(b)), cfg_(cfg) {}

  /// Image of x, extending the matching when x is new.
  PB forward(const PA& x) {
    std::size_t slot = locateA(x);
    if (slot < pairs_.size() && a_.cmp(pairs_[slot].first, x) == Ordering::Equal) {
      return pairs_[slot].second;
    }
    PB y = findPartnerB(x, slot);
    pairs_.insert(pairs_.begin() + static_cast<std::ptrdiff_t>(slot), {x, y});
    if (cfg_.auditEachStep) audit();
    return pairs_[slot].second;
  }

  /// Preimage of y, extending the matching when y is new.
  PA backward(const PB& y) {
    std::size_t slot = locateB(y);
    if (slot < pairs_.size() && b_.cmp(pairs_[slot].second, y) == Ordering::Equal) {
      return pairs_[slot].first;
    }
    PA x = findPartnerA(y, slot);
    pairs_.insert(pairs_.begin() + static_cast<std::ptrdiff_t>(slot), {x, y});
    if (cfg_.auditEachStep) audit();
    return pairs_[slot].first;
  }

  /// Fair alternation: step 2k matches the k-th enumerated element of the
  /// first side, step 2k+1 the k-th of the second.
  void step() {
    std::size_t t = steps_++;
    if (t % 2 == 0) {
      auto x = a_.at(t / 2);
      if (x) forward(*x);
    } else {
      auto y = b_.at(t / 2);
      if (y) backward(*y);
    }
  }

  std::size_t stepCount() const { return steps_; }
  const std::vector<std::pair<PA, PB>>& pairs() const { return pairs_; }

  /// Verifies the matched table is strictly increasing in both coordinates
  /// and color-preserving; throws WitnessInvariantError otherwise.
  void audit() const {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (a_.color(pairs_[i].first) != b_.color(pairs_[i].second)) {
        throw WitnessInvariantError("pair " + std::to_string(i) + " mismatches colors");
      }
      if (i + 1 < pairs_.size()) {
        if (a_.cmp(pairs_[i].first, pairs_[i + 1].first) != Ordering::Less ||
            b_.cmp(pairs_[i].second, pairs_[i + 1].second) != Ordering::Less) {
          throw WitnessInvariantError("matched table out of order at " + std::to_string(i));
        }
      }
    }
  }

 private:
  // Index of the first pair whose A-point is >= x.
  std::size_t locateA(const PA& x) const {
    std::size_t lo = 0, hi = pairs_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (a_.cmp(pairs_[mid].first, x) == Ordering::Less) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  std::size_t locateB(const PB& y) const {
    std::size_t lo = 0, hi = pairs_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (b_.cmp(pairs_[mid].second, y) == Ordering::Less) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  // Least-enumeration-index element of B that fits strictly between the
  // images of x's neighbors and carries x's color.
  PB findPartnerB(const PA& x, std::size_t slot) {
    ColorKey want = a_.color(x);
    for (std::size_t k = 0; k < cfg_.partnerScanCap; ++k) {
      auto cand = b_.at(k);
      if (!cand) break;  // enumeration ended: the side is not unbounded/dense
      if (b_.color(*cand) != want) continue;
      if (slot > 0 && b_.cmp(pairs_[slot - 1].second, *cand) != Ordering::Less) continue;
      if (slot < pairs_.size() && b_.cmp(*cand, pairs_[slot].second) != Ordering::Less) continue;
      return *cand;
    }
    throw SearchBudgetExceededError("no eligible partner on the target side");
  }

  PA findPartnerA(const PB& y, std::size_t slot) {
    ColorKey want = b_.color(y);
    for (std::size_t k = 0; k < cfg_.partnerScanCap; ++k) {
      auto cand = a_.at(k);
      if (!cand) break;
      if (a_.color(*cand) != want) continue;
      if (slot > 0 && a_.cmp(pairs_[slot - 1].first, *cand) != Ordering::Less) continue;
      if (slot < pairs_.size() && a_.cmp(*cand, pairs_[slot].first) != Ordering::Less) continue;
      return *cand;
    }
    throw SearchBudgetExceededError("no eligible partner on the source side");
  }

  ColoredOrderView<PA> a_;
  ColoredOrderView<PB> b_;
  SessionConfig cfg_;
  std::vector<std::pair<PA, PB>> pairs_;
  std::size_t steps_ = 0;
};

}  // namespace shuffles
