#pragma once

// Zhu-indexed Laurent-polynomial spaces, unit polynomials mu and product
// polynomials pi.
//
// Grades m = l1 + i1/T, p = l2 + i2/T, n = l3 + i3/T. For a sector s in
// 0..T-1 and weights alpha, beta the sector space is
//   O^{T,s}_{n,m}(alpha,beta) = O(alpha+beta-1-Delta,
//                                 alpha-1+l1+d(s<=i1)+s/T,
//                                 -l1-l3-d(s<=i1)-d(T<=s+i3)-1),
// with d(.) the 0/1 indicator.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zhukit/matrix.hpp"
#include "zhukit/ospace.hpp"

namespace zhukit {

/// l + i/T with 0 <= i < T.
struct Grade {
  long l = 0;
  long i = 0;

  Rational value(long T) const { return Rational(l) + Rational(i, T); }
  friend bool operator==(const Grade&, const Grade&) = default;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

struct ZhuIndex {
  long T = 1;
  long delta = 0;
  Grade n;
  Grade m;
  std::optional<Grade> p;

  /// Throws std::invalid_argument unless T >= 1, delta <= 0 and every grade
  /// has l >= 0 and 0 <= i < T.
  void validate() const;
  /// Parses "l+i/T", "num/den" or an integer into a grade with this T.
  static Grade parse_grade(const std::string& text, long T);
  /// Compact label such as "T=2,delta=0,n=1/2,m=1,p=0".
  std::string label() const;

  friend bool operator==(const ZhuIndex&, const ZhuIndex&) = default;
};

/// 1 if i <= j, else 0.
int delta_leq(const Rational& i, const Rational& j);

/// The r in [0, T-1] with i - j = r (mod T), for fractional numerators i, j.
long residue_r(long i, long j, long T);

/// s-vee: the unique value in [0, T-1] with i1 - i3 = s + s-vee (mod T).
long s_vee(const ZhuIndex& idx, long s);

/// O^{T,s}_{n,m}(alpha,beta) as an (N,Q,q) triple.
OSpaceSpec zhu_ospace_spec(const ZhuIndex& idx, long s, long alpha, long beta);

/// All T sector specs, s = 0..T-1.
std::vector<OSpaceSpec> sector_specs(const ZhuIndex& idx, long alpha, long beta);

/// The generator of O^{T,s}_{n,m}(alpha,beta) with lowest exponent q+j.
LaurentPoly f_generator(const ZhuIndex& idx, long s, long alpha, long beta, Exponent j);

/// Support window [lo, hi] of the unit polynomials together with the moduli
/// used to define them: O(N, Q_s, q) with N = hi, q = -l1-l3-3.
struct MuWindow {
  Exponent lo = 0;
  Exponent hi = 0;
  Exponent N = 0;
  Exponent q = 0;
  std::vector<Rational> Qs;

  bool degenerate() const { return N <= q; }
  OSpaceSpec modulus(long s) const { return OSpaceSpec{N, Qs[static_cast<std::size_t>(s)], q}; }
};

MuWindow mu_window(const ZhuIndex& idx, long alpha, long beta);

/// The unit polynomial mu^{T,r}_{n,m}(alpha,beta,i): zero for
/// i >= alpha+beta-Delta, otherwise the unique polynomial supported in the
/// window whose reduction modulo each O(N,Q_s,q) is that of delta_{rs} z^i.
///
/// The functional form of the system is solved once per sector and window
/// (multi-modular, verified exactly) and cached behind a mutex, so the
/// cache is safe to share across threads. Throws std::logic_error if the
/// defining system is singular.
LaurentPoly mu(const ZhuIndex& idx, long alpha, long beta, long r, Exponent i);

/// sum_i c_i mu^{T,r}_{n,m}(alpha,beta,i), formed from the cached solutions
/// with one pass over the window instead of one per i.
LaurentPoly mu_combination(const ZhuIndex& idx, long alpha, long beta, long r,
                           const std::map<Exponent, Rational>& weights);

/// The same polynomial from a fresh, uncached solve of the full square system
/// with the constraint rows taken in reverse order when `reverse_rows` is set.
LaurentPoly mu_uncached(const ZhuIndex& idx, long alpha, long beta, long r, Exponent i,
                        bool reverse_rows);

/// The square matrix of the mu system: column e (exponent lo+e of the
/// window) stacks the reductions of z^e modulo each sector modulus.
RationalMatrix mu_system_matrix(const MuWindow& w);

/// The same system through the annihilating functionals of each modulus:
/// row (s,t), t in [q+1,N], column e holds binom(-Q_s, t-(lo+e)).
RationalMatrix mu_functional_matrix(const MuWindow& w);

/// The product polynomial pi^T_{n,p,m}(alpha,beta). Requires idx.p.
LaurentPoly pi(const ZhuIndex& idx, long alpha, long beta);

/// pi assembled term by term through residue_kernel over mu; the
/// independent route for pi.
LaurentPoly pi_by_residues(const ZhuIndex& idx, long alpha, long beta);

/// Polynomials spanning the part of the intersection of the sector spaces
/// O^{T,s}_{n,m}(alpha,beta) supported in [lo - depth, hi] (lo, hi from
/// mu_window): a basis of the intersection's window part, followed by
///   z^e - sum_s mu(s, e)   for e = lo-1 down to lo-depth.
/// Together with z^e, e > hi, these span every element of the intersection
/// with lowest exponent >= lo - depth.
std::vector<LaurentPoly> intersection_generators(const ZhuIndex& idx, long alpha, long beta, long depth);

/// Drops every cached mu solution.
void clear_mu_cache();

}  // namespace zhukit
