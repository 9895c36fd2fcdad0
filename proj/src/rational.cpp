#include "shuffles/rational.hpp"

namespace shuffles {

std::optional<Rational> Rational::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n;
      if (n.set_str(text, 10) != 0) return std::nullopt;
      return Rational(mpq_class(n));
    }
    std::string np = text.substr(0, slash);
    std::string dp = text.substr(slash + 1);
    if (np.empty() || dp.empty()) return std::nullopt;
    mpz_class n, d;
    if (n.set_str(np, 10) != 0 || d.set_str(dp, 10) != 0) return std::nullopt;
    if (d == 0) return std::nullopt;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

bool Rational::isDyadic() const {
  mpz_class d = v_.get_den();
  // d is a power of two iff it has a single set bit.
  return mpz_popcount(d.get_mpz_t()) == 1;
}

std::string Rational::str() const {
  if (isInteger()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

}  // namespace shuffles
