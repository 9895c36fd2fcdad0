#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "shuffles/element.hpp"
#include "shuffles/ordering.hpp"

namespace shuffles {

struct WitnessEndpoint {
  std::optional<Term> term;  // when the side is a plain term order
  std::string describe;
};

struct TraceEvent {
  std::size_t step;
  bool forward;
  Element src;
  Element dst;
};

/// A pair of mutually inverse monotone pointwise-computable maps between two
/// presented orders. Every evaluation is recorded and checked against the
/// memo: a violation of strict monotonicity or of roundtrip consistency
/// throws WitnessInvariantError at the offending call. Evaluations are
/// serialized internally; a witness is safe to share.
class IsoWitness {
 public:
  using Map = std::function<Element(const Element&)>;
  using Cmp = std::function<Ordering(const Element&, const Element&)>;

  IsoWitness(Map fwd, Map bwd, Cmp cmpSrc, Cmp cmpDst, WitnessEndpoint src, WitnessEndpoint dst);

  Element forward(const Element& x) const;
  Element backward(const Element& y) const;

  const WitnessEndpoint& source() const;
  const WitnessEndpoint& target() const;
  Ordering compareSource(const Element& a, const Element& b) const;
  Ordering compareTarget(const Element& a, const Element& b) const;

  /// JSON-lines sink for evaluation events; pass nullptr to disable.
  void setTraceSink(std::function<void(const TraceEvent&)> sink) const;
  /// Disables memo-based invariant checking (for fault-injection tests).
  void setChecked(bool on) const;

  std::size_t evaluations() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// Serializes one trace event as a JSON line.
std::string traceEventJson(const TraceEvent& ev);

}  // namespace shuffles
