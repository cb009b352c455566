#include "polycert/polynomial.h"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace polycert {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exponents_(std::move(exponents)) {
  for (auto e : exponents_) degree_ += e;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  std::vector<std::uint32_t> e(other.exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exponents_[i];
  return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m(a);
  for (std::size_t i = 0; i < m.exponents_.size(); ++i) {
    m.exponents_[i] += b.exponents_[i];
  }
  m.degree_ += b.degree_;
  return m;
}

int Monomial::Compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  for (std::size_t i = 0; i < a.exponents_.size(); ++i) {
    if (a.exponents_[i] != b.exponents_[i]) {
      return a.exponents_[i] < b.exponents_[i] ? -1 : 1;
    }
  }
  return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto e : m.exponents()) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

bool TermGreater(const Polynomial::Term& a, const Polynomial::Term& b) {
  return Monomial::Compare(a.first, b.first) > 0;
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) {
    throw std::invalid_argument("Polynomial: nvars must be positive");
  }
}

Polynomial Polynomial::Constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (!c.is_zero()) p.terms_.emplace_back(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::Variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) {
    throw std::invalid_argument("Polynomial::Variable: index out of range");
  }
  Polynomial p(nvars);
  std::vector<std::uint32_t> e(nvars, 0);
  e[index] = 1;
  p.terms_.emplace_back(Monomial(std::move(e)), Rational(1));
  return p;
}

Polynomial Polynomial::FromTerms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  for (const auto& [m, c] : terms) {
    if (m.nvars() != nvars) {
      throw std::invalid_argument("Polynomial: monomial arity mismatch");
    }
  }
  std::sort(terms.begin(), terms.end(), TermGreater);
  for (auto& term : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == term.first) {
      p.terms_.back().second += term.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!term.second.is_zero()) {
      p.terms_.push_back(std::move(term));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& [mono, c] : terms_) {
    if (mono == m) return c;
  }
  return Rational(0);
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree());
}

Rational Polynomial::Evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) {
    throw std::invalid_argument("Polynomial::Evaluate: point has " +
                                std::to_string(point.size()) +
                                " coordinates, expected " +
                                std::to_string(nvars_));
  }
  std::vector<std::vector<mpq_class>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) powers[v].emplace_back(1);
  mpq_class sum(0);
  mpq_class term;
  for (const auto& [m, c] : terms_) {
    term = c.get();
    for (std::size_t v = 0; v < nvars_; ++v) {
      const auto e = m.exponent(v);
      if (e == 0) continue;
      auto& pw = powers[v];
      while (pw.size() <= e) pw.push_back(pw.back() * point[v].get());
      term *= pw[e];
    }
    sum += term;
  }
  return Rational(sum);
}

void Polynomial::CheckSameRing(const Polynomial& o, const char* op) const {
  if (o.nvars_ != nvars_) {
    throw std::invalid_argument(std::string("Polynomial ") + op +
                                ": variable-count mismatch (" +
                                std::to_string(nvars_) + " vs " +
                                std::to_string(o.nvars_) + ")");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::AddScaled(const Polynomial& o, const Rational& scale) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    const int cmp = a == terms_.end()     ? -1
                    : b == o.terms_.end() ? 1
                                          : Monomial::Compare(a->first,
                                                              b->first);
    if (cmp > 0) {
      merged.push_back(std::move(*a++));
    } else if (cmp < 0) {
      merged.emplace_back(b->first, b->second * scale);
      ++b;
    } else {
      Rational c = a->second + b->second * scale;
      if (!c.is_zero()) merged.emplace_back(std::move(a->first), std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  CheckSameRing(o, "add");
  return AddScaled(o, Rational(1));
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  CheckSameRing(o, "sub");
  return AddScaled(o, Rational(-1));
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [m, coef] : terms_) coef *= c;
  }
  return *this;
}

namespace {

// Scales coefficients to integers: returns (integer coefficients, common
// denominator).
std::pair<std::vector<mpz_class>, mpz_class> IntegerContent(
    const std::vector<Polynomial::Term>& terms) {
  mpz_class den(1);
  for (const auto& [m, c] : terms) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get().get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    ints.emplace_back((den / c.get().get_den()) * c.get().get_num());
  }
  return {std::move(ints), std::move(den)};
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.CheckSameRing(b, "mul");
  Polynomial result(a.nvars_);
  if (a.is_zero() || b.is_zero()) return result;
  if (a.is_constant()) return b * a.terms_[0].second;
  if (b.is_constant()) return a * b.terms_[0].second;

  // Integer convolution, one division by the denominators at the end.
  const auto [ia, da] = IntegerContent(a.terms_);
  const auto [ib, db] = IntegerContent(b.terms_);
  std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  mpz_class prod;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    for (std::size_t j = 0; j < b.terms_.size(); ++j) {
      prod = ia[i] * ib[j];
      auto [it, inserted] =
          acc.try_emplace(a.terms_[i].first * b.terms_[j].first, prod);
      if (!inserted) it->second += prod;
    }
  }
  const mpz_class den = da * db;
  result.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) result.terms_.emplace_back(m, Rational(c, den));
  }
  std::sort(result.terms_.begin(), result.terms_.end(), TermGreater);
  return result;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::Pow(unsigned exponent) const {
  Polynomial result = Constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::DivideExact(
    const Polynomial& divisor) const {
  CheckSameRing(divisor, "divide");
  if (divisor.is_zero()) {
    throw std::domain_error("Polynomial::DivideExact: zero divisor");
  }
  if (divisor.is_constant()) {
    Rational inv = Rational(1) / divisor.terms_[0].second;
    return *this * inv;
  }
  // Leading terms multiply under a monomial order, so an exact quotient
  // exists only if every step's leading monomial is divisible.
  Polynomial remainder(*this);
  std::vector<Term> quotient;
  const auto& [lead_m, lead_c] = divisor.leading_term();
  while (!remainder.is_zero()) {
    const auto& [rm, rc] = remainder.leading_term();
    if (!lead_m.divides(rm)) return std::nullopt;
    Term step(lead_m.quotient_of(rm), rc / lead_c);
    Polynomial shifted(nvars_);
    shifted.terms_.reserve(divisor.terms_.size());
    for (const auto& [m, c] : divisor.terms_) {
      shifted.terms_.emplace_back(m * step.first, c * step.second);
    }
    remainder -= shifted;
    quotient.push_back(std::move(step));
  }
  Polynomial q(nvars_);
  q.terms_ = std::move(quotient);  // generated in strictly descending order
  return q;
}

std::string Polynomial::ToString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = negative ? -c : c;
    bool wrote = false;
    if (m.is_one() || !magnitude.is_one()) {
      os << magnitude;
      wrote = true;
    }
    for (std::size_t v = 0; v < m.nvars(); ++v) {
      const auto e = m.exponent(v);
      if (e == 0) continue;
      if (wrote) os << '*';
      os << 't' << (v + 1);
      if (e > 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.ToString();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars)
      : text_(text), nvars_(nvars) {}

  Polynomial Run() {
    std::vector<Polynomial::Term> terms;
    SkipSpace();
    if (AtEnd()) Fail("empty polynomial");
    bool negative = false;
    if (Peek() == '+' || Peek() == '-') {
      negative = Peek() == '-';
      ++pos_;
    }
    while (true) {
      terms.push_back(ParseTerm(negative));
      SkipSpace();
      if (AtEnd()) break;
      if (Peek() != '+' && Peek() != '-') Fail("expected '+' or '-'");
      negative = Peek() == '-';
      ++pos_;
    }
    return Polynomial::FromTerms(nvars_, std::move(terms));
  }

 private:
  Polynomial::Term ParseTerm(bool negative) {
    SkipSpace();
    if (AtEnd()) Fail("expected a term");
    Rational coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(Peek()))) {
      coef = ParseCoefficient();
      have_coef = true;
    }
    std::vector<std::uint32_t> exps(nvars_, 0);
    SkipSpace();
    bool need_factor = !have_coef;
    if (have_coef && !AtEnd() && Peek() == '*') {
      ++pos_;
      need_factor = true;
    } else if (have_coef && !AtEnd() && Peek() == 't') {
      need_factor = true;
    }
    if (need_factor) {
      while (true) {
        ParseFactor(exps);
        SkipSpace();
        if (AtEnd() || Peek() != '*') break;
        ++pos_;
      }
    }
    if (negative) coef = -coef;
    return {Monomial(std::move(exps)), coef};
  }

  Rational ParseCoefficient() {
    const std::size_t start = pos_;
    std::string digits = Digits();
    SkipSpace();
    if (!AtEnd() && Peek() == '/') {
      ++pos_;
      SkipSpace();
      if (AtEnd() || !std::isdigit(static_cast<unsigned char>(Peek()))) {
        Fail("expected denominator");
      }
      std::string den = Digits();
      if (mpz_class(den) == 0) {
        pos_ = start;
        Fail("zero denominator");
      }
      return Rational(mpz_class(digits), mpz_class(den));
    }
    return Rational(mpz_class(digits), mpz_class(1));
  }

  void ParseFactor(std::vector<std::uint32_t>& exps) {
    SkipSpace();
    if (AtEnd() || Peek() != 't') Fail("expected variable 't<i>'");
    const std::size_t var_col = pos_;
    ++pos_;
    if (AtEnd() || !std::isdigit(static_cast<unsigned char>(Peek()))) {
      Fail("expected variable index after 't'");
    }
    const unsigned long index = ParseSmall("variable index");
    if (index < 1 || index > nvars_) {
      pos_ = var_col;
      Fail("variable t" + std::to_string(index) + " out of range (nvars = " +
           std::to_string(nvars_) + ")");
    }
    unsigned long exponent = 1;
    SkipSpace();
    if (!AtEnd() && Peek() == '^') {
      ++pos_;
      SkipSpace();
      if (AtEnd() || !std::isdigit(static_cast<unsigned char>(Peek()))) {
        Fail("expected exponent after '^'");
      }
      exponent = ParseSmall("exponent");
    }
    exps[index - 1] += static_cast<std::uint32_t>(exponent);
  }

  unsigned long ParseSmall(const char* what) {
    const std::size_t start = pos_;
    std::string digits = Digits();
    if (digits.size() > 9) {
      pos_ = start;
      Fail(std::string(what) + " too large");
    }
    return std::stoul(digits);
  }

  std::string Digits() {
    std::string out;
    while (!AtEnd() && std::isdigit(static_cast<unsigned char>(Peek()))) {
      out.push_back(Peek());
      ++pos_;
    }
    return out;
  }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(Peek()))) {
      ++pos_;
    }
  }
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw PolyParseError(pos_ + 1, msg);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::Parse(std::string_view text, std::size_t nvars) {
  if (nvars == 0) {
    throw std::invalid_argument("Polynomial: nvars must be positive");
  }
  return PolyParser(text, nvars).Run();
}

}  // namespace polycert
