#pragma once

// Products and subspaces of a graded vertex algebra V built from the
// polynomial layer by the substitution z^j -> a_j b.
//
// For homogeneous a, b and a Laurent polynomial P, P|_{z^j = a_j b} is
// sum_j P_j a_j b. With it:
//   hat_mu(a, b, i)      = mu(wt a, wt b, i)|_{z^j = a_j b},
//   a *_{n,p,m} b        = pi(wt a, wt b)|_{z^j = a_j b},
//   O'^{T,0}_{n,m}(V)    = span{ a_{-2}1 + (wt a + m - n) a },
//   O'^{T,1}_{n,m}(V)    = span{ P|_{z^j = a_j b} : P in cap_s O^{T,s}_{n,m}(wt a, wt b) },
// all extended bilinearly over homogeneous components. The weight of a
// basis label is its partition weight.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zhukit/fock.hpp"
#include "zhukit/laurent.hpp"
#include "zhukit/report.hpp"
#include "zhukit/zhu.hpp"

namespace zhukit {

/// sum_j P_j a_j b for homogeneous a, b (zero inputs give zero).
/// Throws PreconditionError for inhomogeneous inputs and CutoffError when a
/// substituted mode lands above the cutoff.
FockVector substitute(const GradedVertexAlgebra& V, const LaurentPoly& P, const FockVector& a,
                      const FockVector& b);

/// hat_mu^{T,s}_{n,m}(a, b, i), bilinear in a and b.
FockVector hat_mu(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& b,
                  long s, Exponent i);

/// a *^T_{n,p,m} b, bilinear in a and b. Requires idx.p.
FockVector star(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& b);

/// o_{n,m}(a) w = a_{wt a + m - n - 1} w on V itself; a must be homogeneous.
/// Throws PreconditionError when the mode index is not an integer.
FockVector o_map(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& w);

/// Res_x (1+x)^c x^j Y(b,x) a = sum_{k>=0} binom(c,k) b_{j+k} a; the sum stops
/// once b_{j+k} a falls below weight delta.
FockVector residue_y(const GradedVertexAlgebra& V, const Rational& c, Exponent j, const FockVector& b,
                     const FockVector& a);

/// Res_x (1+x)^c sum_j hat_mu^{T,r}(a,b,j) x^{-j-1} = sum_{k>=0} binom(c,k) hat_mu(r, a, b, k).
FockVector hat_mu_residue(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a,
                          const FockVector& b, long r, const Rational& c);

struct OvGenerator {
  std::string label;
  FockVector vector;
};

/// a_{-2}1 + (wt a + m - n) a for every basis a with wt a <= max_basis_weight.
std::vector<OvGenerator> o0_generators(const GradedVertexAlgebra& V, const ZhuIndex& idx, long max_basis_weight);

/// The O'^{T,0} generators with wt a + 1 <= W, then the O'^{T,1} generators
/// P|_{z^j = a_j b} for basis pairs (a, b) and P from
/// intersection_generators(idx, wt a, wt b, J), keeping only those whose
/// every component has weight <= W. Zero vectors are dropped.
std::vector<OvGenerator> o_generators(const GradedVertexAlgebra& V, const ZhuIndex& idx, long W, long J);

enum class Membership { member, non_member, inconclusive };

std::string_view to_string(Membership m);

struct MembershipResult {
  Membership status = Membership::inconclusive;
  /// For `member`: coefficients with v == sum c * generator, verified exactly.
  std::vector<std::pair<std::string, Rational>> witness;
  long W = 0;
  long J = 0;
  std::size_t generators = 0;

  /// Status, (W, J) and the leading witness terms.
  std::string describe(std::size_t max_terms = 4) const;
};

/// Exact decision of v in O'^{T,0}_{n,m}(V).
///
/// Uses the generators with wt a <= top weight of v. This is complete
/// whenever a -> a_{-2}1 is injective on V_w for w >= 1 (true for the free
/// boson): the top-weight block of any longer combination would have to be
/// killed by that map. Requires cutoff >= top weight + 1.
MembershipResult member_o0(const GradedVertexAlgebra& V, const FockVector& v, const ZhuIndex& idx);

/// Semidecision of v in O'^{T,0}_{n,m}(V) + O'^{T,1}_{n,m}(V) over
/// o_generators(idx, W, J).
///
/// `member` comes with an exactly re-verified witness; otherwise the answer
/// is `inconclusive`, never a non-membership claim. The span is explored
/// modulo word-size primes and the combination is then solved and checked
/// over Q. Requires v to have weight <= W.
MembershipResult member_ov(const GradedVertexAlgebra& V, const FockVector& v, const ZhuIndex& idx, long W,
                           long J);

struct VertexGrid {
  std::vector<long> Ts{1, 2};
  long max_l = 1;                // integer parts of n, m, p
  long identity_weight = 3;      // basis a with wt a <= this
  long pair_weight = 2;          // a, b with wt <= this
  long W = 12;
  long J = 8;
  long W_retry = 16;
  long J_retry = 12;

  /// "default" (the values above) or "small" (T = 1 and weights <= 2).
  static VertexGrid preset(std::string_view name);
};

/// inv_ab, sum_unit_s, identity, a_multi_1, ab_ba, assoc.
const std::vector<std::string>& v_lemma_names();

/// Runs one named vertex-layer check on a Heisenberg algebra sized for the
/// grid; throws std::invalid_argument for unknown names.
Report verify_v_lemma(std::string_view name, const VertexGrid& grid);

}  // namespace zhukit
