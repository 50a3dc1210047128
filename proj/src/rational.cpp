#include "cleanpair/rational.hpp"

#include <stdexcept>

namespace cleanpair {

namespace {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(text.substr(0, slash)), den);
}

std::string Rational::wire() const { return num().get_str() + "/" + den().get_str(); }

std::string to_string(const Rational& r) {
  if (r.is_integer()) return r.num().get_str();
  return r.num().get_str() + "/" + r.den().get_str();
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

std::optional<Rational> exact_root(const Rational& r, unsigned k) {
  if (k == 0) return std::nullopt;
  if (r.is_zero()) return Rational(0);
  if (r.sign() < 0 && k % 2 == 0) return std::nullopt;
  Integer n = r.num(), d = r.den();
  const bool neg = n < 0;
  if (neg) n = -n;
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k) == 0) return std::nullopt;
  if (neg) rn = -rn;
  return Rational(rn, rd);
}

}  // namespace cleanpair
