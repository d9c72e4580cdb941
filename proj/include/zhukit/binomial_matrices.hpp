#pragma once

// Binomial matrices whose nonsingularity makes the sector decomposition of
// Laurent polynomials (and hence the unit polynomials) well defined.
//
// For a tuple x_0..x_{t-1} and block width b, A = (A_0 ... A_{t-1}) is the
// tb x tb matrix whose block A_s has rows i = (t-1)b-1, ..., 0, -1, ..., -b
// (top to bottom) and columns k = 1..b with entries alpha(x_s, i, k).
//
// The sector matrix Gamma(T, N, q, Q) has rows indexed by exponents
// e = N+1-T(N-q), ..., N and block-s entries
//   sum_{j=1}^{k} binom(-Q_s, -e+q+j) binom(Q_s, k-j) = alpha(-Q_s, q-e, k).
// With b = N-q the row map e -> q-e sends N+1-Tb to (T-1)b-1 and N to -b, so
// Gamma(T,N,q,Q) = A(-Q_0, ..., -Q_{T-1}; b) entry for entry.

#include <span>
#include <vector>

#include "zhukit/matrix.hpp"

namespace zhukit {

/// alpha(x,i,k) = sum_{j=1}^{k} binom(x, i+j) binom(-x, k-j), k >= 1.
/// For i < 0 this is 1 when i+k = 0 and 0 otherwise.
Rational alpha_entry(const Rational& x, long i, long k);

/// The tb x tb matrix A described above. Requires xs nonempty and b >= 1.
RationalMatrix build_A(std::span<const Rational> xs, long b);

/// prod_{i<j} prod_{k=-b+1}^{b-1} ((x_i - x_j + k) / (b(j-i) + k))^{b-|k|}.
Rational det_closed_form(std::span<const Rational> xs, long b);

/// Gamma(T, N, q, Qs); throws std::invalid_argument when N <= q or Qs.size() != T.
RationalMatrix build_Gamma(long T, long N, long q, std::span<const Rational> Qs);

}  // namespace zhukit
