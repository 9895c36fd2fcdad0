#include "shuffles/term.hpp"

#include <algorithm>
#include <cctype>

#include "shuffles/errors.hpp"

namespace shuffles {

namespace {

std::shared_ptr<const TermNode> make(TermNode n) {
  return std::make_shared<const TermNode>(std::move(n));
}

const std::shared_ptr<const TermNode>& zeroSingleton() {
  static const std::shared_ptr<const TermNode> z = make(TermNode{ZeroT{}});
  return z;
}

}  // namespace

Term::Term() : node_(zeroSingleton()) {}

Term Term::zero() { return Term(zeroSingleton()); }

Term Term::finite(std::uint64_t n) {
  if (n == 0) return zero();
  return Term(make(TermNode{FinOrdT{n}}));
}

Term Term::omega() { return Term(make(TermNode{OmegaT{}})); }

Term Term::rationals() { return Term(make(TermNode{RationalsT{}})); }

Term Term::reverse(Term sub) { return Term(make(TermNode{ReverseT{std::move(sub)}})); }

Term Term::sum(Term left, Term right) {
  return Term(make(TermNode{SumT{std::move(left), std::move(right)}}));
}

Term Term::shuffle(std::vector<Term> parts) {
  std::vector<Term> kept;
  for (auto& p : parts) {
    if (p.isZero()) continue;  // a zero shuffland never changes the shuffle
    bool dup = false;
    for (const auto& k : kept) {
      if (sameTerm(k, p)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(p));
  }
  if (kept.empty()) return zero();  // shuffle of zeros is the empty order
  return Term(make(TermNode{ShuffleT{std::move(kept)}}));
}

bool Term::isZero() const { return std::holds_alternative<ZeroT>(node_->v); }
bool Term::isShuffle() const { return std::holds_alternative<ShuffleT>(node_->v); }

namespace {

int constructorRank(const TermNode& n) { return static_cast<int>(n.v.index()); }

}  // namespace

Ordering compareTerms(const Term& a, const Term& b) {
  if (a.ptr() == b.ptr()) return Ordering::Equal;
  const TermNode& na = a.node();
  const TermNode& nb = b.node();
  int ra = constructorRank(na), rb = constructorRank(nb);
  if (ra != rb) return ra < rb ? Ordering::Less : Ordering::Greater;
  if (auto* fa = std::get_if<FinOrdT>(&na.v)) {
    auto* fb = std::get_if<FinOrdT>(&nb.v);
    if (fa->n != fb->n) return fa->n < fb->n ? Ordering::Less : Ordering::Greater;
    return Ordering::Equal;
  }
  if (auto* va = std::get_if<ReverseT>(&na.v)) {
    return compareTerms(va->sub, std::get_if<ReverseT>(&nb.v)->sub);
  }
  if (auto* sa = std::get_if<SumT>(&na.v)) {
    auto* sb = std::get_if<SumT>(&nb.v);
    Ordering l = compareTerms(sa->left, sb->left);
    if (l != Ordering::Equal) return l;
    return compareTerms(sa->right, sb->right);
  }
  if (auto* ha = std::get_if<ShuffleT>(&na.v)) {
    auto* hb = std::get_if<ShuffleT>(&nb.v);
    std::size_t n = std::min(ha->parts.size(), hb->parts.size());
    for (std::size_t i = 0; i < n; ++i) {
      Ordering o = compareTerms(ha->parts[i], hb->parts[i]);
      if (o != Ordering::Equal) return o;
    }
    if (ha->parts.size() != hb->parts.size()) {
      return ha->parts.size() < hb->parts.size() ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
  }
  return Ordering::Equal;  // Zero / Omega / Rationals carry no payload
}

std::optional<std::uint64_t> cardinality(const Term& t) {
  const TermNode& n = t.node();
  if (std::holds_alternative<ZeroT>(n.v)) return 0;
  if (auto* f = std::get_if<FinOrdT>(&n.v)) return f->n;
  if (std::holds_alternative<OmegaT>(n.v) || std::holds_alternative<RationalsT>(n.v)) {
    return std::nullopt;
  }
  if (auto* r = std::get_if<ReverseT>(&n.v)) return cardinality(r->sub);
  if (auto* s = std::get_if<SumT>(&n.v)) {
    auto l = cardinality(s->left);
    auto r = cardinality(s->right);
    if (!l || !r) return std::nullopt;
    return *l + *r;
  }
  return std::nullopt;  // normalized shuffles have a nonzero part at densely many positions
}

bool hasLeastElement(const Term& t) {
  const TermNode& n = t.node();
  if (std::holds_alternative<ZeroT>(n.v)) return false;
  if (std::holds_alternative<FinOrdT>(n.v) || std::holds_alternative<OmegaT>(n.v)) return true;
  if (std::holds_alternative<RationalsT>(n.v)) return false;
  if (auto* r = std::get_if<ReverseT>(&n.v)) return hasGreatestElement(r->sub);
  if (auto* s = std::get_if<SumT>(&n.v)) {
    return s->left.isZero() ? hasLeastElement(s->right) : hasLeastElement(s->left);
  }
  return false;  // shuffle: position order is unbounded below
}

bool hasGreatestElement(const Term& t) {
  const TermNode& n = t.node();
  if (std::holds_alternative<ZeroT>(n.v)) return false;
  if (std::holds_alternative<FinOrdT>(n.v)) return true;
  if (std::holds_alternative<OmegaT>(n.v) || std::holds_alternative<RationalsT>(n.v)) return false;
  if (auto* r = std::get_if<ReverseT>(&n.v)) return hasLeastElement(r->sub);
  if (auto* s = std::get_if<SumT>(&n.v)) {
    return s->right.isZero() ? hasGreatestElement(s->left) : hasGreatestElement(s->right);
  }
  return false;
}

bool isDenseOrder(const Term& t) {
  // "Dense" here means no adjacent pair; vacuously true on <= 1 elements.
  const TermNode& n = t.node();
  if (std::holds_alternative<ZeroT>(n.v)) return true;
  if (auto* f = std::get_if<FinOrdT>(&n.v)) return f->n <= 1;
  if (std::holds_alternative<OmegaT>(n.v)) return false;
  if (std::holds_alternative<RationalsT>(n.v)) return true;
  if (auto* r = std::get_if<ReverseT>(&n.v)) return isDenseOrder(r->sub);
  if (auto* s = std::get_if<SumT>(&n.v)) {
    if (!isDenseOrder(s->left) || !isDenseOrder(s->right)) return false;
    // The seam creates an adjacency only when both ends are present.
    return !(hasGreatestElement(s->left) && hasLeastElement(s->right));
  }
  // Shuffle: positions are dense, so an adjacency can only sit inside a
  // single block; fine iff every shuffland is itself adjacency-free.
  const auto& h = std::get<ShuffleT>(n.v);
  for (const auto& p : h.parts) {
    if (!isDenseOrder(p)) return false;
  }
  return true;
}

std::string Term::str() const {
  const TermNode& n = node();
  if (std::holds_alternative<ZeroT>(n.v)) return "0";
  if (auto* f = std::get_if<FinOrdT>(&n.v)) return std::to_string(f->n);
  if (std::holds_alternative<OmegaT>(n.v)) return "w";
  if (std::holds_alternative<RationalsT>(n.v)) return "Q";
  if (auto* r = std::get_if<ReverseT>(&n.v)) return "rev(" + r->sub.str() + ")";
  if (auto* s = std::get_if<SumT>(&n.v)) {
    auto wrap = [](const Term& t) {
      // right operand of + needs parens when itself a sum (keeps left assoc)
      if (std::holds_alternative<SumT>(t.node().v)) return "(" + t.str() + ")";
      return t.str();
    };
    return s->left.str() + "+" + wrap(s->right);
  }
  const auto& h = std::get<ShuffleT>(n.v);
  std::string out = "shuffle{";
  for (std::size_t i = 0; i < h.parts.size(); ++i) {
    if (i) out += ",";
    out += h.parts[i].str();
  }
  out += "}";
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Term parse() {
    Term t = parseSum();
    skipWs();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  Term parseSum() {
    Term acc = parseAtom();
    while (true) {
      skipWs();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        advance();
        acc = Term::sum(acc, parseAtom());
      } else {
        return acc;
      }
    }
  }

  Term parseAtom() {
    skipWs();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '0' && !(pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      advance();
      return Term::zero();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parseNat();
    if (c == 'w') {
      advance();
      return Term::omega();
    }
    if (c == 'Q') {
      advance();
      return Term::rationals();
    }
    if (text_.compare(pos_, 4, "rev(") == 0) {
      for (int i = 0; i < 4; ++i) advance();
      Term sub = parseSum();
      expect(')');
      return Term::reverse(sub);
    }
    if (text_.compare(pos_, 8, "shuffle{") == 0) {
      std::size_t braceLine = line_, braceCol = col_;
      for (int i = 0; i < 8; ++i) advance();
      skipWs();
      if (pos_ < text_.size() && text_[pos_] == '}') {
        throw EmptyShuffleError(braceLine, braceCol);
      }
      std::vector<Term> parts;
      parts.push_back(parseSum());
      while (true) {
        skipWs();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          advance();
          parts.push_back(parseSum());
        } else {
          break;
        }
      }
      expect('}');
      return Term::shuffle(std::move(parts));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Term parseNat() {
    std::uint64_t n = 0;
    bool overflow = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (n > (UINT64_MAX - d) / 10) overflow = true;
      if (!overflow) n = n * 10 + d;
      advance();
    }
    if (overflow) fail("finite order size too large");
    return Term::finite(n);
  }

  void expect(char c) {
    skipWs();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    advance();
  }

  void skipWs() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Term parseTerm(const std::string& text) { return Parser(text).parse(); }

}  // namespace shuffles
