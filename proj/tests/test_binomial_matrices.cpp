#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zhukit/binomial_matrices.hpp"

using namespace zhukit;

namespace {

// Determinant by plain Gaussian elimination with row swaps over mpq_class.
Rational gauss_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c).raw();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return Rational(det);
}

std::vector<Rational> random_point(std::mt19937_64& rng, long t) {
  std::vector<Rational> xs;
  for (long s = 0; s < t; ++s) xs.push_back(oracle::random_rational(rng, 20, 7));
  return xs;
}

}  // namespace

TEST_CASE("alpha_entry: fixed values and the negative-row rule") {
  const Rational x(5, 7);
  CHECK(alpha_entry(x, -1, 1) == Rational(1));
  CHECK(alpha_entry(x, -2, 1) == Rational(0));
  CHECK(alpha_entry(x, 0, 1) == x);
  for (long i = -5; i < 0; ++i)
    for (long k = 1; k <= 5; ++k) CHECK(alpha_entry(x, i, k) == Rational(i + k == 0 ? 1 : 0));
  // Direct sum from the falling-factorial oracle.
  for (long i = 0; i <= 4; ++i)
    for (long k = 1; k <= 4; ++k) {
      Rational s;
      for (long j = 1; j <= k; ++j) s += oracle::falling_binom(x, i + j) * oracle::falling_binom(-x, k - j);
      CHECK(alpha_entry(x, i, k) == s);
    }
}

TEST_CASE("build_A: small shapes") {
  for (long b = 1; b <= 4; ++b) {
    const std::vector<Rational> xs{Rational(2, 9)};
    CHECK(build_A(xs, b) == RationalMatrix::identity(static_cast<std::size_t>(b)));
  }
  const std::vector<Rational> xs{Rational(3, 2), Rational(1, 3)};
  const RationalMatrix a = build_A(xs, 1);
  RationalMatrix expect(2, 2);
  expect(0, 0) = xs[0];
  expect(0, 1) = xs[1];
  expect(1, 0) = 1;
  expect(1, 1) = 1;
  CHECK(a == expect);
}

TEST_CASE("build_A: entries are polynomials of degree at most i+k") {
  // A polynomial of degree d in x is fixed by d+1 values: its (d+1)-th finite
  // difference vanishes.
  const long t = 3, b = 2;
  for (long i = -b; i <= (t - 1) * b - 1; ++i)
    for (long k = 1; k <= b; ++k) {
      const long d = std::max<long>(i + k, 0);
      Rational diff;
      for (long r = 0; r <= d + 1; ++r)
        diff += Rational(sign_power(r)) * oracle::falling_binom(Rational(d + 1), r) *
                alpha_entry(Rational(r, 3), i, k);
      CHECK(diff.is_zero());
    }
}

TEST_CASE("det_exact: fixed values") {
  CHECK(det_exact(RationalMatrix::identity(5)) == Rational(1));
  CHECK_THROWS_AS(det_exact(RationalMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("det_closed_form: fixed values") {
  const std::vector<Rational> one{Rational(4, 3)};
  CHECK(det_closed_form(one, 3) == Rational(1));
  const std::vector<Rational> two{Rational(3, 2), Rational(1, 3)};
  CHECK(det_closed_form(two, 1) == Rational(7, 6));
  CHECK(det_exact(build_A(two, 1)) == Rational(7, 6));
  for (long t = 1; t <= 4; ++t)
    for (long b = 1; b <= 3; ++b) {
      std::vector<Rational> xs;
      for (long s = 0; s < t; ++s) xs.push_back(Rational((t - 1 - s) * b));
      CHECK(det_closed_form(xs, b) == Rational(1));
      CHECK(det_exact(build_A(xs, b)) == Rational(1));
    }
}

TEST_CASE("det of A equals the product formula at random points") {
  std::mt19937_64 rng(31);
  for (long t = 1; t <= 3; ++t)
    for (long b = 1; b <= 3; ++b)
      for (int trial = 0; trial < 25; ++trial) {
        const auto xs = random_point(rng, t);
        const RationalMatrix a = build_A(xs, b);
        const Rational d = det_exact(a);
        CHECK(d == det_closed_form(xs, b));
        if (trial < 3) CHECK(d == gauss_det(a));
      }
}

TEST_CASE("det of A vanishes on the hyperplanes x_i - x_j + k = 0") {
  std::mt19937_64 rng(32);
  for (long b = 1; b <= 3; ++b)
    for (long k = -b + 1; k <= b - 1; ++k) {
      auto xs = random_point(rng, 3);
      xs[2] = xs[0] + Rational(k);
      CHECK(det_closed_form(xs, b).is_zero());
      CHECK(det_exact(build_A(xs, b)).is_zero());
    }
}

TEST_CASE("build_Gamma: entries, reflection to A and fixed values") {
  std::mt19937_64 rng(33);
  for (long T = 1; T <= 3; ++T)
    for (long b = 1; b <= 3; ++b) {
      const long q = -static_cast<long>(rng() % 4) - 1;
      const long N = q + b;
      std::vector<Rational> Qs, xs;
      for (long s = 0; s < T; ++s) {
        Qs.push_back(Rational(s, T) + Rational(static_cast<long>(rng() % 3)));
        xs.push_back(-Qs.back());
      }
      const RationalMatrix g = build_Gamma(T, N, q, Qs);
      REQUIRE(g.rows() == static_cast<std::size_t>(T * b));
      for (long r = 0; r < T * b; ++r) {
        const long e = N + 1 - T * b + r;
        for (long s = 0; s < T; ++s)
          for (long k = 1; k <= b; ++k) {
            Rational entry;
            for (long j = 1; j <= k; ++j)
              entry += oracle::falling_binom(-Qs[s], -e + q + j) * oracle::falling_binom(Qs[s], k - j);
            CHECK(g(r, s * b + k - 1) == entry);
          }
      }
      CHECK(g == build_A(xs, b));
      CHECK_FALSE(det_exact(g).is_zero());
    }
  const std::vector<Rational> Qs{Rational(1), Rational(1, 2)};
  CHECK(det_exact(build_Gamma(2, 0, -1, Qs)) == Rational(-1, 2));
  const std::vector<Rational> single{Rational(3, 5)};
  CHECK(det_exact(build_Gamma(1, 2, -2, single)) == Rational(1));
  CHECK_THROWS_AS(build_Gamma(2, 0, 0, Qs), std::invalid_argument);
  CHECK_THROWS_AS(build_Gamma(3, 1, 0, Qs), std::invalid_argument);
}
