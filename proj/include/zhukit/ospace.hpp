#pragma once

// The subspaces O(N,Q,q;z) of Q[z,z^-1] and reduction modulo them.
//
// O(N,Q,q;z) is spanned by the truncated binomial polynomials
//   g_j = sum_{i=0}^{N-q-j} binom(Q,i) z^{i+q+j},   j = 0,-1,-2,...
// together with every z^i, i >= N+1. The g_j have distinct lowest exponents
// q+j with unit leading coefficient, so elimination from the bottom is
// triangular and the window monomials z^{q+1},...,z^N give a basis of the
// quotient (dimension N-q; zero when N <= q).

#include <span>
#include <vector>

#include "zhukit/laurent.hpp"

namespace zhukit {

struct OSpaceSpec {
  Exponent N = 0;
  Rational Q;
  Exponent q = 0;

  /// N <= q: the space is all of Q[z,z^-1].
  bool degenerate() const { return N <= q; }
  /// Dimension of the quotient, N - q (0 when degenerate).
  Exponent quotient_dim() const { return degenerate() ? 0 : N - q; }

  friend bool operator==(const OSpaceSpec&, const OSpaceSpec&) = default;
};

struct ReducedForm {
  LaurentPoly canonical;  // supported in [q+1, N]
  OSpaceSpec spec;
};

/// g_j for j <= 0.
LaurentPoly o_generator(const OSpaceSpec& spec, Exponent j);

/// The unique representative of f + O supported in [q+1, N].
///
/// Applies, by linearity, a per-thread table of the reductions of z^e
/// (e <= q) built once per space by the triangular elimination; the
/// combination is carried out over integers with one division per output
/// coefficient.
ReducedForm reduce_mod_o(const LaurentPoly& f, const OSpaceSpec& spec);

/// The same representative by direct elimination on f, lowest exponent first.
ReducedForm reduce_by_elimination(const LaurentPoly& f, const OSpaceSpec& spec);

/// Drops the calling thread's monomial-reduction tables.
void clear_reduction_cache();

/// The same representative from the closed formula
///   z^i = sum_{k=1}^{N-q} sum_{j=1}^{k} binom(-Q, -i+q+j) binom(Q, k-j) z^{q+k}
/// (mod O, for i <= N), extended linearly. Equivalently: truncate
/// f(z)(1+z)^{-Q} to [q+1, N], multiply by (1+z)^Q and truncate again.
ReducedForm reduce_closed_form(const LaurentPoly& f, const OSpaceSpec& spec);

/// Exact membership test f in O(N,Q,q;z).
bool member_o(const LaurentPoly& f, const OSpaceSpec& spec);

/// Membership through the annihilating functionals
///   f in O(N,Q,q;z)  <=>  [z^t] f(z)(1+z)^{-Q} = 0  for q+1 <= t <= N,
/// an elimination-free route used to cross-check reduce_mod_o.
bool member_o_dual(const LaurentPoly& f, const OSpaceSpec& spec);

/// The involution phi_{N,gamma}:
///   z^i -> (-1)^{i+1} sum_{j=0}^{N-i} binom(gamma-i, j) z^{i+j}   (i <= N),
///   z^i -> z^i                                                  (i > N).
LaurentPoly phi(Exponent N, const Rational& gamma, const LaurentPoly& f);

/// Componentwise reduction realizing Q[z,z^-1]/(cap O_s) = (+)_s Q[z,z^-1]/O_s.
///
/// Throws std::invalid_argument when two Q-values are congruent modulo Z.
std::vector<ReducedForm> reduce_mod_intersection(const LaurentPoly& f,
                                                 std::span<const OSpaceSpec> specs);

/// f in the intersection of all the spaces (no congruence hypothesis needed).
bool member_intersection(const LaurentPoly& f, std::span<const OSpaceSpec> specs);

}  // namespace zhukit
