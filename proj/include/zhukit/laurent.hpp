#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "zhukit/rational.hpp"

namespace zhukit {

using Exponent = std::int64_t;

/// Exponent arithmetic with overflow detection.
Exponent checked_add(Exponent a, Exponent b);

/// A Laurent polynomial in z with rational coefficients.
///
/// Stored sparsely as exponent -> coefficient; zero coefficients are never kept,
/// so the zero polynomial has empty support.
class LaurentPoly {
public:
  using Terms = std::map<Exponent, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(Terms terms);

  static LaurentPoly monomial(Exponent e, Rational c = Rational(1));

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Coefficient of z^e (zero when absent).
  Rational coeff(Exponent e) const;
  /// Adds c z^e in place.
  void add_term(Exponent e, const Rational& c);

  /// Smallest / largest exponent of a nonzero polynomial.
  Exponent min_exponent() const;
  Exponent max_exponent() const;

  /// Multiplication by z^k.
  LaurentPoly shifted(Exponent k) const;
  /// Terms with lo <= e <= hi.
  LaurentPoly restricted(Exponent lo, Exponent hi) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  /// Adds c * o in place.
  LaurentPoly& add_scaled(const Rational& c, const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Canonical text: "c*z^e" terms in ascending exponent order joined by " + ",
  /// e.g. "-1/2*z^-1 + 1/8*z^0"; the zero polynomial is "0".
  std::string to_text() const;
  /// Inverse of to_text; also accepts " - " separators and a bare "z^e" for 1*z^e.
  static LaurentPoly parse_text(std::string_view text);

private:
  Terms terms_;
};

/// Coefficient source for residue_kernel: j -> S(j).
using LaurentFamily = std::function<LaurentPoly(Exponent)>;

/// Res_x (1+x)^Q x^t sum_j S(j) x^{-j-1} = sum_{k>=0, t+k<=j_max} binom(Q,k) S(t+k).
///
/// S must vanish above j_max; the bound is the caller's certificate that the
/// sum is finite.
LaurentPoly residue_kernel(const Rational& Q, Exponent t, const LaurentFamily& S,
                           std::optional<Exponent> j_max);

}  // namespace zhukit
