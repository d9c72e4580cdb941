#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zhukit/rational.hpp"

namespace zhukit {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers by the lcm of its denominators, the
/// integer determinant is computed with exact divisions only, and the row
/// scalings are divided back out. Throws std::invalid_argument if not square.
Rational det_exact(const RationalMatrix& m);

/// Solves A X = B exactly; std::nullopt when A is singular.
/// Throws std::invalid_argument unless A is square with A.rows() == B.rows().
std::optional<RationalMatrix> solve_exact(const RationalMatrix& a, const RationalMatrix& b);

/// Solves A X = B by elimination modulo word-size primes, Chinese
/// remaindering and rational reconstruction.
///
/// A candidate is returned only after A X = B has been verified exactly in
/// integer arithmetic, so the answer is the same as solve_exact's. Falls back
/// to solve_exact when A looks singular modulo several primes or the
/// reconstruction does not stabilize.
std::optional<RationalMatrix> solve_modular(const RationalMatrix& a, const RationalMatrix& b);

/// A square system A X = B presented through its reductions modulo primes.
struct ModularSystem {
  std::size_t n = 0;  // A is n x n
  std::size_t k = 0;  // B is n x k
  /// Writes [A | B] mod p row-major (n rows of n + k residues) into `out`;
  /// returns false when p divides a denominator.
  std::function<bool(std::uint64_t p, std::vector<std::uint64_t>& out)> reduce;
  /// Exact acceptance test for a candidate X.
  std::function<bool(const RationalMatrix& x)> verify;
  /// Exact solver used when no modular candidate verifies.
  std::function<std::optional<RationalMatrix>()> fallback;
};

/// Exact test of A X == B (rows are cleared of denominators first).
bool is_solution(const RationalMatrix& a, const RationalMatrix& b, const RationalMatrix& x);

/// Multi-modular solve of a presented system (primes below 2^28).
///
/// Candidates come from the symmetric Chinese remainder, accepted early once
/// a further prime leaves it unchanged (integral solutions), or from rational
/// reconstruction; either way a candidate is returned only if sys.verify
/// accepts it.
std::optional<RationalMatrix> solve_modular(const ModularSystem& sys);

/// Rank over Q.
std::size_t rank(const RationalMatrix& m);

/// A basis of {x : M x = 0}, one column vector per entry, in reduced form
/// (each basis vector has a 1 at its own free column and 0 at the others).
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

}  // namespace zhukit
