#pragma once

// Exact rational scalars backed by GMP, plus generalized binomial coefficients.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace zhukit {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(int v) : value_(v) {}
  Rational(long v) : value_(v) {}
  Rational(long long v) : value_(static_cast<long>(v)) {}
  Rational(long num, long den);
  explicit Rational(const BigInt& v) : value_(v) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "n", "-n" or "n/d". Decimal points and exponents are rejected.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Largest integer not exceeding the value.
  BigInt floor() const;
  /// The value as a machine integer; throws if non-integral or out of range.
  long to_long() const;

  /// "n/d" with the denominator always written out.
  std::string to_fraction_string() const;
  /// "n" for integers, "n/d" otherwise.
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);
  /// this += a*b and this -= a*b without a temporary Rational.
  Rational& add_mul(const Rational& a, const Rational& b);
  Rational& sub_mul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// q(q-1)...(q-k+1)/k! for k >= 0, and 0 for k < 0.
///
/// Values are memoized per thread, keyed by (q, k); rows are extended
/// incrementally with binom(q,k) = binom(q,k-1) (q-k+1)/k.
const Rational& binom(const Rational& q, long k);

/// The memo row of q extended through k_max: row[k] == binom(q, k) for
/// 0 <= k <= k_max. The reference stays valid until clear_binom_cache().
const std::deque<Rational>& binom_row(const Rational& q, long k_max);

/// Drops the calling thread's binomial memo.
void clear_binom_cache();

/// (-1)^k for any integer k.
inline int sign_power(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace zhukit

template <>
struct std::hash<zhukit::Rational> {
  std::size_t operator()(const zhukit::Rational& r) const noexcept { return r.hash(); }
};
