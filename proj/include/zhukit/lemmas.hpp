#pragma once

// Executable checks of the polynomial-layer lemmas over a parameter grid.
//
// Each check emits one record per (T, Delta, n, m[, p]) grid point; the inner
// loops (weights, sectors, depths, exponents) stop at the first failure and
// report it as the witness.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zhukit/report.hpp"
#include "zhukit/zhu.hpp"

namespace zhukit {

struct LemmaGrid {
  std::vector<long> Ts{1, 2, 3};
  long max_l = 2;                     // integer parts of n, m, p
  std::vector<long> deltas{0, -1};
  long max_weight = 3;                // alpha, beta in [Delta, max_weight]
  long depth = 6;                     // generator depth J: j = 0, -1, ..., -J
  std::vector<long> tprime_factors{2, 3};
  long det_max = 3;                   // det_identity: t, b in 1..det_max
  long det_points = 25;               // random rational points per (t, b)
  long phi_samples = 200;             // random polynomials per (N, gamma)
  std::uint64_t seed = 20240611;      // fixes every random sample

  /// "default" (the values above) or "small" (T <= 2, l <= 1, weights <= 2,
  /// fewer random samples).
  /// Throws std::invalid_argument for any other name.
  static LemmaGrid preset(std::string_view name);

  /// All grades l + i/T with l <= max_l.
  std::vector<Grade> grades(long T) const;
};

/// Recognized check names, in suite order.
const std::vector<std::string>& lemma_names();

/// Runs one named check; throws std::invalid_argument for unknown names.
Report verify_lemma(std::string_view name, const LemmaGrid& grid);

/// The two sector-duality identities for s-vee:
///   (-s - s' + i1 - i3)/T + d(T <= s' + i3) = d(s <= i1) - 1,
///   d(s' <= i1) + d(T <= s' + i3) = d(s <= i1) + d(T <= s + i3),
/// with s' the s-vee of s.
bool svee_identities_hold(long T, long i1, long i3, long s);

}  // namespace zhukit
