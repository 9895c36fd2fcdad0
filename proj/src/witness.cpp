#include "shuffles/witness.hpp"

#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuffles/errors.hpp"

namespace shuffles {

struct IsoWitness::Impl {
  Map fwd;
  Map bwd;
  Cmp cmpSrc;
  Cmp cmpDst;
  WitnessEndpoint src;
  WitnessEndpoint dst;

  mutable std::mutex mu;
  // matched evaluations sorted by source order; both coordinates stay sorted
  std::vector<std::pair<Element, Element>> memo;
  std::size_t evals = 0;
  bool checked = true;
  std::function<void(const TraceEvent&)> sink;

  std::size_t locate(const Element& x) const {
    std::size_t lo = 0, hi = memo.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cmpSrc(memo[mid].first, x) == Ordering::Less) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  void record(const Element& x, const Element& y, bool forward) {
    ++evals;
    if (sink) sink(TraceEvent{evals, forward, x, y});
    if (!checked) return;
    std::size_t slot = locate(x);
    if (slot < memo.size() && cmpSrc(memo[slot].first, x) == Ordering::Equal) {
      if (cmpDst(memo[slot].second, y) != Ordering::Equal) {
        throw WitnessInvariantError("conflicting images for " + x.str() + ": " +
                                    memo[slot].second.str() + " vs " + y.str());
      }
      return;
    }
    if (slot > 0 && cmpDst(memo[slot - 1].second, y) != Ordering::Less) {
      throw WitnessInvariantError("monotonicity broken between " + memo[slot - 1].first.str() +
                                  " and " + x.str());
    }
    if (slot < memo.size() && cmpDst(y, memo[slot].second) != Ordering::Less) {
      throw WitnessInvariantError("monotonicity broken between " + x.str() + " and " +
                                  memo[slot].first.str());
    }
    memo.insert(memo.begin() + static_cast<std::ptrdiff_t>(slot), {x, y});
  }
};

IsoWitness::IsoWitness(Map fwd, Map bwd, Cmp cmpSrc, Cmp cmpDst, WitnessEndpoint src,
                       WitnessEndpoint dst)
    : impl_(std::make_shared<Impl>()) {
  impl_->fwd = std::move(fwd);
  impl_->bwd = std::move(bwd);
  impl_->cmpSrc = std::move(cmpSrc);
  impl_->cmpDst = std::move(cmpDst);
  impl_->src = std::move(src);
  impl_->dst = std::move(dst);
}

Element IsoWitness::forward(const Element& x) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  Element y = impl_->fwd(x);
  impl_->record(x, y, true);
  return y;
}

Element IsoWitness::backward(const Element& y) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  Element x = impl_->bwd(y);
  impl_->record(x, y, false);
  return x;
}

const WitnessEndpoint& IsoWitness::source() const { return impl_->src; }
const WitnessEndpoint& IsoWitness::target() const { return impl_->dst; }

Ordering IsoWitness::compareSource(const Element& a, const Element& b) const {
  return impl_->cmpSrc(a, b);
}
Ordering IsoWitness::compareTarget(const Element& a, const Element& b) const {
  return impl_->cmpDst(a, b);
}

void IsoWitness::setTraceSink(std::function<void(const TraceEvent&)> sink) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->sink = std::move(sink);
}

void IsoWitness::setChecked(bool on) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->checked = on;
}

std::size_t IsoWitness::evaluations() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->evals;
}

std::string traceEventJson(const TraceEvent& ev) {
  nlohmann::json j;
  j["step"] = ev.step;
  j["dir"] = ev.forward ? "fwd" : "bwd";
  j["src"] = nlohmann::json::parse(elementToJson(ev.src));
  j["dst"] = nlohmann::json::parse(elementToJson(ev.dst));
  return j.dump();
}

}  // namespace shuffles
