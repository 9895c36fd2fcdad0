#include "shuffles/enumerate.hpp"

#include <mutex>
#include <vector>

#include "shuffles/dyadic.hpp"
#include "shuffles/errors.hpp"
#include "shuffles/staged_coloring.hpp"

namespace shuffles {

Rational rationalAt(std::size_t k) {
  // Diagonal N = |p| + q over reduced fractions p/q, q >= 1; within a
  // diagonal denominators ascend and the positive value precedes its mirror.
  std::size_t remaining = k;
  for (unsigned long n = 1;; ++n) {
    for (unsigned long q = 1; q <= n; ++q) {
      unsigned long pa = n - q;
      mpz_class g;
      mpz_gcd_ui(g.get_mpz_t(), mpz_class(pa).get_mpz_t(), q);
      if (pa == 0) {
        if (q != 1) continue;  // 0/q duplicates 0/1
        if (remaining == 0) return Rational(0);
        --remaining;
        continue;
      }
      if (g != 1) continue;
      if (remaining == 0) return Rational(static_cast<long>(pa), static_cast<long>(q));
      --remaining;
      if (remaining == 0) return Rational(-static_cast<long>(pa), static_cast<long>(q));
      --remaining;
    }
  }
}

namespace {

class Gen;
using GenPtr = std::shared_ptr<Gen>;

/// Pull-based element generator; produces the k-th element on demand with a
/// growing memo, so streams are repeatable and cheap to share.
class Gen {
 public:
  virtual ~Gen() = default;
  // Returns the next element, or nullopt when the order is exhausted.
  virtual std::optional<Element> next() = 0;
};

class ZeroGen : public Gen {
 public:
  std::optional<Element> next() override { return std::nullopt; }
};

class FinGen : public Gen {
 public:
  explicit FinGen(std::uint64_t n) : n_(n) {}
  std::optional<Element> next() override {
    if (k_ >= n_) return std::nullopt;
    return Element::nat(k_++);
  }

 private:
  std::uint64_t n_;
  std::uint64_t k_ = 0;
};

class OmegaGen : public Gen {
 public:
  std::optional<Element> next() override { return Element::nat(k_++); }

 private:
  std::uint64_t k_ = 0;
};

class RationalsGen : public Gen {
 public:
  std::optional<Element> next() override { return Element::rational(rationalAt(k_++)); }

 private:
  std::size_t k_ = 0;
};

class MappedGen : public Gen {
 public:
  MappedGen(GenPtr inner, Element (*wrap)(Element)) : inner_(std::move(inner)), wrap_(wrap) {}
  std::optional<Element> next() override {
    auto e = inner_->next();
    if (!e) return std::nullopt;
    return wrap_(std::move(*e));
  }

 private:
  GenPtr inner_;
  Element (*wrap_)(Element);
};

GenPtr makeGen(const Term& t);

/// Memoized random-access view over a generator.
class Buffered {
 public:
  explicit Buffered(GenPtr g) : gen_(std::move(g)) {}
  std::optional<Element> at(std::size_t k) {
    while (!done_ && memo_.size() <= k) {
      auto e = gen_->next();
      if (!e) {
        done_ = true;
        break;
      }
      memo_.push_back(std::move(*e));
    }
    if (k < memo_.size()) return memo_[k];
    return std::nullopt;
  }

 private:
  GenPtr gen_;
  std::vector<Element> memo_;
  bool done_ = false;
};

class SumGen : public Gen {
 public:
  SumGen(GenPtr l, GenPtr r) : left_(std::move(l)), right_(std::move(r)) {}
  std::optional<Element> next() override {
    // Scheduled side first, then the other when it turned out exhausted.
    for (int tries = 0; tries < 2; ++tries) {
      bool useLeft = !flip_;
      flip_ = !flip_;
      if (useLeft) {
        if (!leftDone_) {
          auto e = left_->next();
          if (e) return Element::sumLeft(std::move(*e));
          leftDone_ = true;
        }
      } else {
        if (!rightDone_) {
          auto e = right_->next();
          if (e) return Element::sumRight(std::move(*e));
          rightDone_ = true;
        }
      }
    }
    return std::nullopt;
  }

 private:
  GenPtr left_;
  GenPtr right_;
  bool flip_ = false;
  bool leftDone_ = false;
  bool rightDone_ = false;
};

class ShuffleGen : public Gen {
 public:
  explicit ShuffleGen(const ShuffleT& h) : coloring_(canonicalShuffleColoring(h.parts.size())) {
    for (const auto& p : h.parts) parts_.emplace_back(Buffered(makeGen(p)));
  }

  std::optional<Element> next() override {
    // Diagonal over (position index j, within-block index m); blocks are
    // nonempty so every diagonal emits at least one element.
    while (true) {
      if (j_ > diag_) {
        ++diag_;
        j_ = 0;
      }
      std::size_t j = j_;
      std::size_t m = diag_ - j_;
      ++j_;
      Rational pos = dyadicAt(j);
      std::size_t color = coloring_->colorAt(pos);
      auto inner = parts_[color].at(m);
      if (inner) return Element::inShuffle(std::move(pos), color, std::move(*inner));
    }
  }

 private:
  std::shared_ptr<const StagedColoring> coloring_;
  std::vector<Buffered> parts_;
  std::size_t diag_ = 0;
  std::size_t j_ = 0;
};

GenPtr makeGen(const Term& t) {
  const TermNode& n = t.node();
  if (std::holds_alternative<ZeroT>(n.v)) return std::make_shared<ZeroGen>();
  if (auto* f = std::get_if<FinOrdT>(&n.v)) return std::make_shared<FinGen>(f->n);
  if (std::holds_alternative<OmegaT>(n.v)) return std::make_shared<OmegaGen>();
  if (std::holds_alternative<RationalsT>(n.v)) return std::make_shared<RationalsGen>();
  if (auto* r = std::get_if<ReverseT>(&n.v)) {
    return std::make_shared<MappedGen>(makeGen(r->sub),
                                       +[](Element e) { return Element::reversed(std::move(e)); });
  }
  if (auto* s = std::get_if<SumT>(&n.v)) {
    return std::make_shared<SumGen>(makeGen(s->left), makeGen(s->right));
  }
  return std::make_shared<ShuffleGen>(std::get<ShuffleT>(n.v));
}

}  // namespace

struct ElementStream::Impl {
  Term term;
  Buffered buffered;
  std::mutex mu;
  Impl(Term t, GenPtr g) : term(std::move(t)), buffered(std::move(g)) {}
};

ElementStream::ElementStream(Term t) {
  GenPtr g = makeGen(t);
  impl_ = std::make_shared<Impl>(std::move(t), std::move(g));
}

std::optional<Element> ElementStream::at(std::size_t k) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->buffered.at(k);
}

const Term& ElementStream::term() const { return impl_->term; }

std::size_t ElementStream::indexOf(const Element& e, std::size_t cap) const {
  for (std::size_t k = 0; k < cap; ++k) {
    auto x = at(k);
    if (!x) break;
    if (structurallyEqual(*x, e)) return k;
  }
  throw SearchBudgetExceededError("element not found in enumeration: " + e.str());
}

}  // namespace shuffles
