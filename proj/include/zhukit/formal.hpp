#pragma once

// Two-variable expansion maps, sector decompositions of bi-series and exact
// checks of the mode identities of a vertex algebra V acting on itself
// (the untwisted case T = 1).
//
// For a, b, w in V the iterate series Y(Y(a,x0)b,x2)w has (i,l)-coefficient
// (a_l b)_i w, written iterate(a,b,w,i,l) below.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zhukit/fock.hpp"
#include "zhukit/matrix.hpp"
#include "zhukit/rational.hpp"
#include "zhukit/report.hpp"

namespace zhukit {

enum class IotaDirection {
  x_then_y,   // |x| > |y|: sum_i binom(l,i) (-1)^i x^{j+l-i} y^{k+i}
  y_then_x,   // |y| > |x|: sum_i binom(l,i) (-1)^{l-i} x^{j+i} y^{k+l-i}
  y_then_xy,  // x = y + (x-y): sum_i binom(j,i) y^{k+j-i} (x-y)^{l+i}
};

std::string_view to_string(IotaDirection d);

/// coeff * u^first * v^second with (u, v) = (x, y), or (y, x-y) for y_then_xy.
struct ExpansionTerm {
  Rational coeff;
  Rational first;
  Rational second;
};

/// The expansion of x^j y^k (x-y)^l, truncated to the inner-sum indices
/// i < order. Zero coefficients are omitted.
struct MonomialExpansion {
  Rational j;
  Rational k;
  long l = 0;
  IotaDirection direction = IotaDirection::x_then_y;
  long order = 0;
  std::vector<ExpansionTerm> terms;
};

/// Throws std::invalid_argument for order < 0.
MonomialExpansion iota_expand(IotaDirection dir, const Rational& j, const Rational& k, long l, long order);

/// A finitely supported bi-series sum X_{pq} x^p y^q with p, q in (1/T)Z,
/// restricted to the rectangle [p_lo, p_hi] x [q_lo, q_hi].
class BiseriesWindow {
public:
  using Index = std::pair<Rational, Rational>;

  /// Throws std::invalid_argument for T < 1.
  BiseriesWindow(long T, Rational p_lo, Rational p_hi, Rational q_lo, Rational q_hi);

  long T() const { return T_; }
  const Rational& p_lo() const { return p_lo_; }
  const Rational& p_hi() const { return p_hi_; }
  const Rational& q_lo() const { return q_lo_; }
  const Rational& q_hi() const { return q_hi_; }

  /// Inside the rectangle with both exponents in (1/T)Z.
  bool contains(const Rational& p, const Rational& q) const;

  /// The coefficient at (p, q); zero if unset. Throws std::out_of_range
  /// outside the window.
  FockVector at(const Rational& p, const Rational& q) const;

  /// Replaces the coefficient; a zero vector erases it. Throws
  /// std::out_of_range outside the window.
  void set(const Rational& p, const Rational& q, FockVector v);

  const std::map<Index, FockVector>& entries() const { return entries_; }

  BiseriesWindow& operator+=(const BiseriesWindow& o);
  friend bool operator==(const BiseriesWindow& a, const BiseriesWindow& b) = default;

private:
  long T_;
  Rational p_lo_, p_hi_, q_lo_, q_hi_;
  std::map<Index, FockVector> entries_;  // nonzero coefficients only
};

enum class SeriesVariable { first, second };

/// The terms whose exponent in the chosen variable lies in s/T + Z; the
/// components over s = 0..T-1 have disjoint supports and sum to X.
/// Throws std::invalid_argument unless 0 <= s < T.
BiseriesWindow sector_component(const BiseriesWindow& X, long s, SeriesVariable var);

/// The lower unitriangular Toeplitz matrix with (r, c) entry binom(j, r-c).
RationalMatrix binomial_toeplitz(const Rational& j, std::size_t size);

/// (a_l b)_i w.
FockVector iterate(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b, const FockVector& w,
                   std::int64_t i, std::int64_t l);

/// Both sides of an identity between vectors of V.
struct IdentitySides {
  FockVector lhs;
  FockVector rhs;
  bool holds() const { return lhs == rhs; }
};

/// sum_i binom(j,i) (a_{l+i}b)_{j+k-i} w against
/// sum_i binom(l,i) (-1)^i (a_{l+j-i} b_{k+i} + (-1)^{l+1} b_{l+k-i} a_{j+i}) w.
/// Throws CutoffError when a mode leaves the cutoff.
IdentitySides borcherds_coeff_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                                    const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l);
bool borcherds_coeff_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                           const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l);

/// The least L with a_i b = 0 for every i > L; a and b must be nonzero
/// (throws std::invalid_argument otherwise). Can throw CutoffError when the
/// first nonzero product lies above the cutoff.
std::int64_t product_bound(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b);

/// (a_l b)_{j+k} w against its expression through products of single modes,
/// sum_{m=0}^{L-l} binom(-j,m) sum_i binom(l+m,i) (-1)^i
///   (a_{l+m+j-i} b_{k-m+i} + (-1)^{l+m+1} b_{l+k-i} a_{j+i}) w.
/// Throws PreconditionError unless a_i b = 0 for all i > L.
IdentitySides express_ysab_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                                 const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l,
                                 std::int64_t L);
bool express_ysab_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                        const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l, std::int64_t L);

/// (a_{-2}1)_n w against -n a_{n-1} w.
IdentitySides derivation_sides(const GradedVertexAlgebra& V, const FockVector& a, std::int64_t n,
                               const FockVector& w);
bool derivation_check(const GradedVertexAlgebra& V, const FockVector& a, std::int64_t n, const FockVector& w);

/// (1_l a)_k w against delta_{l,-1} a_k w.
IdentitySides ysonea_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& w,
                           std::int64_t k, std::int64_t l);
/// Also requires the single-mode expression express_ysab_sides(1, a, w, 0,
/// k, l, -1).rhs to equal delta_{l,-1} a_k w.
bool ysonea_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& w, std::int64_t k,
                  std::int64_t l);

struct FormalGrid {
  long max_jk = 3;       // |j|, |k| <= max_jk
  long l_lo = -3;
  long l_hi = 3;
  long max_n = 4;        // derivation: |n| <= max_n
  long pair_weight = 2;  // basis a, b with wt <= this
  long w_weight = 3;     // basis w with wt <= this
  long toeplitz_size = 8;
  long cutoff = 16;

  /// "default" (the values above) or "small" (|j|,|k|,|l| <= 2, weights <= 1, 2).
  static FormalGrid preset(std::string_view name);
};

/// borcherds, express_ysab, derivation, ysonea, toeplitz_inverse, iota, sector_sum.
const std::vector<std::string>& formal_check_names();

/// Runs one named check; throws std::invalid_argument for unknown names.
Report verify_formal(std::string_view name, const FormalGrid& grid);

}  // namespace zhukit
