#include "shuffles/dyadic.hpp"

namespace shuffles {

Rational DyadicWord::value() const {
  mpz_class num = 0;
  for (bool b : bits) {
    num <<= 1;
    if (b) num += 1;
  }
  mpz_class den = 1;
  den <<= bits.size();
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

std::optional<DyadicWord> DyadicWord::fromValue(const Rational& q) {
  if (!q.isDyadic()) return std::nullopt;
  if (q <= Rational(0) || q >= Rational(1)) return std::nullopt;
  mpz_class den = q.denominator();
  std::size_t level = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;  // den == 2^level
  mpz_class num = q.numerator();
  DyadicWord w;
  w.bits.resize(level);
  for (std::size_t j = 0; j < level; ++j) {
    w.bits[level - 1 - j] = mpz_tstbit(num.get_mpz_t(), static_cast<mp_bitcnt_t>(j)) != 0;
  }
  return w;
}

std::string DyadicWord::str() const {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Rational dyadicAt(std::size_t k) {
  // Level L holds 2^(L-1) values (odd numerators over 2^L); cumulative 2^L - 1.
  std::size_t level = 1;
  std::size_t before = 0;
  while (k - before >= (std::size_t{1} << (level - 1))) {
    before += std::size_t{1} << (level - 1);
    ++level;
  }
  std::size_t j = k - before;
  mpz_class num = 2 * static_cast<unsigned long>(j) + 1;
  mpz_class den = 1;
  den <<= level;
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

std::optional<std::size_t> dyadicIndex(const Rational& q) {
  auto w = DyadicWord::fromValue(q);
  if (!w) return std::nullopt;
  std::size_t level = w->size();
  // q canonical means denominator == 2^level and an odd numerator.
  mpz_class j = (mpz_class(q.numerator()) - 1) / 2;
  std::size_t before = (std::size_t{1} << (level - 1)) - 1;
  return before + j.get_ui();
}

}  // namespace shuffles
