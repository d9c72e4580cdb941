#include "zhukit/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>
#include <deque>
#include <unordered_map>

namespace zhukit {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den) : value_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num))
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_int(num));
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-')
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  const BigInt d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(num), d);
}

BigInt Rational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("rational " + to_string() + " is not an integer");
  if (!value_.get_num().fits_slong_p()) throw std::overflow_error("integer out of machine range");
  return value_.get_num().get_si();
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_string() const {
  return is_integer() ? value_.get_num().get_str() : to_fraction_string();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::size_t Rational::hash() const {
  auto limb_hash = [](mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
    if (mpz_size(z) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(mpz_sgn(z) + 1);
  };
  const std::size_t a = limb_hash(value_.get_num_mpz_t());
  const std::size_t b = limb_hash(value_.get_den_mpz_t());
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

namespace {

struct BinomRows {
  // deque: growth never invalidates references handed out earlier.
  std::unordered_map<Rational, std::deque<Rational>> rows;
};

BinomRows& binom_rows() {
  thread_local BinomRows cache;
  return cache;
}

const Rational kZero{0};

mpq_class& scratch() {
  thread_local mpq_class tmp;
  return tmp;
}

}  // namespace

const std::deque<Rational>& binom_row(const Rational& q, long k_max) {
  auto& row = binom_rows().rows[q];
  if (row.empty()) row.emplace_back(1);
  while (static_cast<long>(row.size()) <= k_max) {
    const long j = static_cast<long>(row.size());
    Rational next = row.back() * (q - Rational(j - 1));
    next /= Rational(j);
    row.push_back(std::move(next));
  }
  return row;
}

const Rational& binom(const Rational& q, long k) {
  if (k < 0) return kZero;
  return binom_row(q, k)[static_cast<std::size_t>(k)];
}

Rational& Rational::add_mul(const Rational& a, const Rational& b) {
  mpq_class& t = scratch();
  mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
  return *this;
}

Rational& Rational::sub_mul(const Rational& a, const Rational& b) {
  mpq_class& t = scratch();
  mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
  return *this;
}

void clear_binom_cache() { binom_rows().rows.clear(); }

}  // namespace zhukit
