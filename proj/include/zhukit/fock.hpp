#pragma once

// Weight-graded vertex algebras with a partition-labelled basis, and the
// rank-one Heisenberg (free boson) instance truncated at a weight cutoff.
//
// The basis vector labelled by n_1 >= ... >= n_k >= 1 is
// h(-n_1)...h(-n_k) 1, of weight n_1 + ... + n_k; the empty partition is the
// vacuum. Modes satisfy [h(m), h(n)] = m d(m+n, 0) and h(n) 1 = 0 for n >= 0.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "zhukit/errors.hpp"
#include "zhukit/rational.hpp"

namespace zhukit {

/// Parts in non-increasing order, each >= 1.
using Partition = std::vector<int>;

long partition_weight(const Partition& p);
/// "h(-2)h(-1)^2 1", or "1" for the vacuum.
std::string partition_text(const Partition& p);

/// A finite rational combination of basis vectors; zero coefficients are
/// never stored.
class FockVector {
public:
  using Terms = std::map<Partition, Rational>;

  FockVector() = default;
  explicit FockVector(Terms terms);

  static FockVector basis(Partition p, Rational c = Rational(1));
  static FockVector vacuum() { return basis({}); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coeff(const Partition& p) const;
  void add_term(const Partition& p, const Rational& c);

  /// The common weight of all terms; nullopt for zero or mixed weights.
  std::optional<long> weight() const;
  /// Largest weight present; -1 for the zero vector.
  long max_weight() const;
  /// Homogeneous components keyed by weight.
  std::map<long, FockVector> components() const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const Rational& c);
  FockVector& add_scaled(const Rational& c, const FockVector& o);

  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// "c*h(-1)^2 1 + ..." in basis order; "0" for the zero vector.
  std::string to_text() const;

private:
  Terms terms_;
};

/// A vertex algebra V = (+)_{w >= delta} V_w whose elements are FockVectors
/// over a partition-labelled homogeneous basis, computable up to a cutoff.
class GradedVertexAlgebra {
public:
  virtual ~GradedVertexAlgebra() = default;

  virtual long delta() const = 0;
  virtual long cutoff() const = 0;
  /// Ordered basis of V_w; empty for w < delta. Throws CutoffError above the cutoff.
  virtual const std::vector<Partition>& weight_basis(long w) const = 0;
  virtual FockVector vacuum() const = 0;
  /// a_j b, bilinear in a and b; satisfies a_j V_k in V_{wt a - 1 - j + k}.
  /// Throws CutoffError when a result component would lie above the cutoff.
  virtual FockVector mode(const FockVector& a, std::int64_t j, const FockVector& b) const = 0;
};

/// The rank-one Heisenberg vertex algebra with <h,h> = 1, delta = 0.
///
/// Modes of basis vectors come from the iterate recursion for a = h(-k)a':
///   (h(-k)a')_j w = sum_{i>=0} binom(k+i-1, i)
///                   [h(-k-i) a'_{j+i} w - (-1)^k a'_{j-k-i} h(i) w],
/// which terminates by induction on the number of parts; every intermediate
/// vector has the weight of the result. Results are memoized behind a shared
/// mutex, so one instance may be used from several threads.
class Heisenberg final : public GradedVertexAlgebra {
public:
  /// Throws std::invalid_argument for a negative cutoff.
  explicit Heisenberg(long cutoff);

  long delta() const override { return 0; }
  long cutoff() const override { return cutoff_; }
  const std::vector<Partition>& weight_basis(long w) const override;
  FockVector vacuum() const override { return FockVector::vacuum(); }
  FockVector mode(const FockVector& a, std::int64_t j, const FockVector& b) const override;

  /// h = h(-1) 1.
  static FockVector generator() { return FockVector::basis({1}); }
  /// The generator mode h(n) applied to v; h(0) acts as 0.
  FockVector h(std::int64_t n, const FockVector& v) const;
  /// a_j b for basis vectors.
  FockVector mode_basis(const Partition& a, std::int64_t j, const Partition& b) const;

  std::size_t memo_size() const;

private:
  using Key = std::tuple<Partition, std::int64_t, Partition>;

  FockVector compute_mode(const Partition& a, std::int64_t j, const Partition& b) const;

  long cutoff_;
  std::vector<std::vector<Partition>> bases_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::map<Key, FockVector> memo_;
};

}  // namespace zhukit
