#include "polycert/rational.h"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace polycert {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
    : value_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

namespace {

bool IsIntegerLiteral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::Parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!IsIntegerLiteral(num)) {
    throw std::invalid_argument("invalid rational: '" + std::string(text) +
                                "'");
  }
  if (slash == std::string_view::npos) return Rational(ParseInteger(num), 1);
  const std::string_view den = text.substr(slash + 1);
  if (!IsIntegerLiteral(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("invalid rational: '" + std::string(text) +
                                "'");
  }
  const mpz_class d = ParseInteger(den);
  if (sgn(d) == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  return Rational(ParseInteger(num), d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::ToString() const { return value_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

}  // namespace polycert
