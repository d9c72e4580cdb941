#include "zhukit/binomial_matrices.hpp"

#include <cstdlib>
#include <stdexcept>

namespace zhukit {

Rational alpha_entry(const Rational& x, long i, long k) {
  if (k < 1) throw std::invalid_argument("alpha_entry: k must be >= 1");
  const Rational neg = -x;
  Rational acc;
  for (long j = 1; j <= k; ++j) {
    const Rational& u = binom(x, i + j);
    if (u.is_zero()) continue;
    acc += u * binom(neg, k - j);
  }
  return acc;
}

RationalMatrix build_A(std::span<const Rational> xs, long b) {
  if (xs.empty() || b < 1) throw std::invalid_argument("build_A: need t >= 1 and b >= 1");
  const long t = static_cast<long>(xs.size());
  const std::size_t order = static_cast<std::size_t>(t * b);
  RationalMatrix a(order, order);
  for (std::size_t row = 0; row < order; ++row) {
    const long i = (t - 1) * b - 1 - static_cast<long>(row);
    for (long s = 0; s < t; ++s)
      for (long k = 1; k <= b; ++k)
        a(row, static_cast<std::size_t>(s * b + k - 1)) = alpha_entry(xs[static_cast<std::size_t>(s)], i, k);
  }
  return a;
}

Rational det_closed_form(std::span<const Rational> xs, long b) {
  if (xs.empty() || b < 1) throw std::invalid_argument("det_closed_form: need t >= 1 and b >= 1");
  Rational out(1);
  const long t = static_cast<long>(xs.size());
  for (long i = 0; i < t; ++i)
    for (long j = i + 1; j < t; ++j)
      for (long k = -b + 1; k <= b - 1; ++k) {
        const Rational ratio = (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)] + Rational(k)) /
                               Rational(b * (j - i) + k);
        for (long e = 0; e < b - std::labs(k); ++e) out *= ratio;
      }
  return out;
}

RationalMatrix build_Gamma(long T, long N, long q, std::span<const Rational> Qs) {
  if (N <= q) throw std::invalid_argument("build_Gamma: requires N > q");
  if (static_cast<long>(Qs.size()) != T) throw std::invalid_argument("build_Gamma: need one Q per sector");
  const long b = N - q;
  const std::size_t order = static_cast<std::size_t>(T * b);
  RationalMatrix g(order, order);
  for (std::size_t row = 0; row < order; ++row) {
    const long e = N + 1 - T * b + static_cast<long>(row);
    for (long s = 0; s < T; ++s) {
      const Rational& Q = Qs[static_cast<std::size_t>(s)];
      const Rational negQ = -Q;
      for (long k = 1; k <= b; ++k) {
        Rational acc;
        for (long j = 1; j <= k; ++j) {
          const Rational& u = binom(negQ, -e + q + j);
          if (!u.is_zero()) acc += u * binom(Q, k - j);
        }
        g(row, static_cast<std::size_t>(s * b + k - 1)) = acc;
      }
    }
  }
  return g;
}

}  // namespace zhukit
