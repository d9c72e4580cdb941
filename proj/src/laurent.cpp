#include "zhukit/laurent.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace zhukit {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Laurent exponent overflow");
  return out;
}

LaurentPoly::LaurentPoly(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

LaurentPoly LaurentPoly::monomial(Exponent e, Rational c) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

Rational LaurentPoly::coeff(Exponent e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(Exponent e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Exponent LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of the zero polynomial");
  return terms_.begin()->first;
}

Exponent LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of the zero polynomial");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::shifted(Exponent k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), checked_add(e, k), c);
  return out;
}

LaurentPoly LaurentPoly::restricted(Exponent lo, Exponent hi) const {
  LaurentPoly out;
  for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first <= hi; ++it)
    out.terms_.emplace_hint(out.terms_.end(), it->first, it->second);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly& LaurentPoly::add_scaled(const Rational& c, const LaurentPoly& o) {
  if (c.is_zero()) return *this;
  for (const auto& [e, v] : o.terms_) add_term(e, c * v);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(checked_add(ea, eb), ca * cb);
  return out;
}

std::string LaurentPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    os << c.to_string() << "*z^" << e;
    first = false;
  }
  return os.str();
}

namespace {

void skip_ws(std::string_view& s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

}  // namespace

LaurentPoly LaurentPoly::parse_text(std::string_view text) {
  const auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string(what) + " in polynomial '" + std::string(text) + "'");
  };
  LaurentPoly out;
  std::string_view s = text;
  skip_ws(s);
  if (s == "0") return out;
  if (s.empty()) fail("no terms");
  bool first = true;
  while (!s.empty()) {
    // term := [sign] [c '*'] 'z^' e, the sign mandatory between terms
    int sign = 1;
    if (s.front() == '+' || s.front() == '-') {
      sign = s.front() == '-' ? -1 : 1;
      s.remove_prefix(1);
      skip_ws(s);
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    Rational c(1);
    if (!s.empty() && s.front() != 'z') {
      const auto star = s.find('*');
      if (star == std::string_view::npos) fail("expected 'c*z^e' term");
      c = Rational::parse(s.substr(0, star));
      s.remove_prefix(star + 1);
      skip_ws(s);
    }
    if (s.substr(0, 2) != "z^") fail("expected 'z^e'");
    s.remove_prefix(2);
    std::size_t len = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    while (len < s.size() && std::isdigit(static_cast<unsigned char>(s[len]))) ++len;
    const Rational e = Rational::parse(s.substr(0, len));
    s.remove_prefix(len);
    out.add_term(e.to_long(), sign > 0 ? c : -c);
    first = false;
    skip_ws(s);
  }
  return out;
}

LaurentPoly residue_kernel(const Rational& Q, Exponent t, const LaurentFamily& S,
                           std::optional<Exponent> j_max) {
  if (!j_max) throw std::invalid_argument("residue_kernel needs an upper support bound for S");
  LaurentPoly out;
  for (Exponent k = 0; checked_add(t, k) <= *j_max; ++k) {
    const Rational& c = binom(Q, k);
    if (c.is_zero()) {
      // (1+x)^Q is a polynomial for Q in N: nothing beyond degree Q.
      if (Q.is_integer() && Q.sign() >= 0) break;
      continue;
    }
    out.add_scaled(c, S(t + k));
  }
  return out;
}

}  // namespace zhukit
