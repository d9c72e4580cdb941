#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "zhukit/laurent.hpp"
#include "zhukit/matrix.hpp"
#include "zhukit/rational.hpp"

using namespace zhukit;

TEST_CASE("binom: fixed values") {
  CHECK(binom(Rational(7, 3), 0) == Rational(1));
  CHECK(binom(Rational(5), -3) == Rational(0));
  CHECK(binom(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binom(Rational(-1), 3) == Rational(-1));
  CHECK(binom(Rational(4), 5) == Rational(0));
}

TEST_CASE("binom: agrees with the falling-factorial product") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational q = oracle::random_rational(rng, 12, 7);
    const long k = static_cast<long>(rng() % 12);
    CHECK(binom(q, k) == oracle::falling_binom(q, k));
  }
}

TEST_CASE("binom: Pascal and upper negation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational q = oracle::random_rational(rng);
    const long k = static_cast<long>(rng() % 10) + 1;
    CHECK(binom(q + 1, k) == binom(q, k) + binom(q, k - 1));
    // binom(-q, k) = (-1)^k binom(q + k - 1, k)
    CHECK(binom(-q, k) == Rational(sign_power(k)) * binom(q + Rational(k - 1), k));
  }
}

TEST_CASE("binom_row matches pointwise values and survives a cache clear") {
  const Rational q(-5, 3);
  const auto& row = binom_row(q, 9);
  REQUIRE(row.size() >= 10);
  for (long k = 0; k <= 9; ++k) CHECK(row[static_cast<std::size_t>(k)] == oracle::falling_binom(q, k));
  clear_binom_cache();
  CHECK(binom(q, 9) == oracle::falling_binom(q, 9));
}

TEST_CASE("Rational: parsing is exact only") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse(" -8/2 ") == Rational(-4));
  CHECK_THROWS_AS(Rational::parse("4/-1"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK(Rational(-6, 4).to_fraction_string() == "-3/2");
  CHECK(Rational(4).to_fraction_string() == "4/1");
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK_THROWS(Rational(1, 2).to_long());
}

TEST_CASE("LaurentPoly: fixed values") {
  const LaurentPoly zm1 = LaurentPoly::monomial(-1);
  const LaurentPoly one = LaurentPoly::monomial(0);
  CHECK((zm1 + one) + (-one) == zm1);
  const LaurentPoly f = zm1 + one * Rational(3);
  const LaurentPoly zero = f * Rational(0);
  CHECK(zero.is_zero());
  CHECK(zero.size() == 0);
  CHECK(LaurentPoly::monomial(-2).shifted(3) == LaurentPoly::monomial(1));
}

TEST_CASE("LaurentPoly: ring axioms on random samples") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, -6, 6);
    const LaurentPoly g = oracle::random_poly(rng, -6, 6);
    const LaurentPoly h = oracle::random_poly(rng, -6, 6);
    const Rational c = oracle::random_rational(rng);
    CHECK(f + g == g + f);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f - f == LaurentPoly{});
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(c * (f + g) == c * f + c * g);
    CHECK(f.shifted(3) == f * LaurentPoly::monomial(3));
    for (const auto& [e, v] : f) CHECK(!v.is_zero());
  }
}

TEST_CASE("LaurentPoly: text round trip") {
  std::mt19937_64 rng(14);
  CHECK(LaurentPoly{}.to_text() == "0");
  const LaurentPoly p = LaurentPoly::monomial(-1, Rational(-1, 2)) + LaurentPoly::monomial(0, Rational(1, 8));
  CHECK(p.to_text() == "-1/2*z^-1 + 1/8*z^0");
  CHECK(LaurentPoly::parse_text("z^-1 - 1/2*z^3") ==
        LaurentPoly::monomial(-1) + LaurentPoly::monomial(3, Rational(-1, 2)));
  for (int trial = 0; trial < 50; ++trial) {
    const LaurentPoly f = oracle::random_poly(rng, -8, 8);
    CHECK(LaurentPoly::parse_text(f.to_text()) == f);
  }
}

TEST_CASE("residue_kernel: fixed values") {
  const auto zero_family = [](Exponent) { return LaurentPoly{}; };
  CHECK(residue_kernel(Rational(2, 3), -1, zero_family, 5).is_zero());

  const auto family = [](Exponent j) {
    if (j == -1) return LaurentPoly::monomial(-1);
    if (j == 0) return LaurentPoly::monomial(0);
    return LaurentPoly{};
  };
  CHECK(residue_kernel(Rational(0), -1, family, 0) == LaurentPoly::monomial(-1));
  CHECK(residue_kernel(Rational(1), -1, family, 0) == LaurentPoly::monomial(-1) + LaurentPoly::monomial(0));
  CHECK_THROWS_AS(residue_kernel(Rational(1), -1, family, std::nullopt), std::invalid_argument);
}

TEST_CASE("residue_kernel: coefficient of x^-1 in a product expansion") {
  // S(j) = z^j for j <= 3: the kernel is sum_k binom(Q,k) z^{t+k}, i.e.
  // z^t (1+z)^Q truncated at exponent 3.
  const auto family = [](Exponent j) { return j <= 3 ? LaurentPoly::monomial(j) : LaurentPoly{}; };
  for (const Rational& Q : {Rational(1, 2), Rational(-2), Rational(3)}) {
    for (Exponent t = -3; t <= 2; ++t) {
      const LaurentPoly expect = oracle::one_plus_z_power(Q, 3 - t).shifted(t);
      CHECK(residue_kernel(Q, t, family, 3) == expect);
    }
  }
}

TEST_CASE("matrices: determinant, solve and rank") {
  RationalMatrix m(2, 2);
  m(0, 0) = Rational(3, 2);
  m(0, 1) = Rational(1, 3);
  m(1, 0) = 1;
  m(1, 1) = 1;
  CHECK(det_exact(m) == Rational(7, 6));
  CHECK(det_exact(RationalMatrix::identity(5)) == Rational(1));

  RationalMatrix rep(3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    rep(0, c) = Rational(static_cast<long>(c) + 1, 2);
    rep(1, c) = rep(0, c);
    rep(2, c) = Rational(static_cast<long>(c * c));
  }
  CHECK(det_exact(rep) == Rational(0));
  CHECK(rank(rep) == 2);
  CHECK_FALSE(solve_exact(rep, RationalMatrix::identity(3)).has_value());
  const auto ns = nullspace(rep);
  REQUIRE(ns.size() == 1);
  for (std::size_t r = 0; r < 3; ++r) {
    Rational acc;
    for (std::size_t c = 0; c < 3; ++c) acc += rep(r, c) * ns[0][c];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("matrices: modular solve equals exact solve") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 6;
    RationalMatrix a(n, n), b(n, 2);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = oracle::random_rational(rng, 40, 9);
      for (std::size_t c = 0; c < 2; ++c) b(r, c) = oracle::random_rational(rng, 40, 9);
    }
    const auto exact = solve_exact(a, b);
    const auto modular = solve_modular(a, b);
    REQUIRE(exact.has_value() == modular.has_value());
    if (!exact) continue;
    CHECK(*exact == *modular);
    CHECK(is_solution(a, b, *modular));
    CHECK(a * *exact == b);
  }
}

TEST_CASE("matrices: singular input to the modular solver") {
  RationalMatrix a(2, 2), b(2, 1);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  b(0, 0) = 1;
  CHECK_FALSE(solve_modular(a, b).has_value());
}
