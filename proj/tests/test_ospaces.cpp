#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zhukit/ospace.hpp"

using namespace zhukit;

namespace {

// f in O(N,Q,q) iff [z^t] f(z)(1+z)^{-Q} = 0 for q+1 <= t <= N; the series is
// expanded from the falling-factorial oracle.
bool dual_member(const LaurentPoly& f, const OSpaceSpec& s) {
  if (s.degenerate() || f.is_zero()) return true;
  const Exponent lo = f.min_exponent();
  if (lo > s.N) return true;
  const LaurentPoly prod = f * oracle::one_plus_z_power(-s.Q, s.N - lo);
  for (Exponent t = s.q + 1; t <= s.N; ++t)
    if (!prod.coeff(t).is_zero()) return false;
  return true;
}

LaurentPoly phi_oracle(Exponent N, const Rational& gamma, const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [i, c] : f) {
    if (i > N) {
      out.add_term(i, c);
      continue;
    }
    for (Exponent j = 0; j <= N - i; ++j)
      out.add_term(i + j, c * Rational(sign_power(i + 1)) * oracle::falling_binom(gamma - Rational(i), j));
  }
  return out;
}

std::vector<OSpaceSpec> sample_specs() {
  return {{0, Rational(1, 2), -2}, {-1, Rational(0), -2}, {3, Rational(-2, 3), -1},
          {2, Rational(5), -4},    {1, Rational(1), -3},  {-2, Rational(7, 4), -6}};
}

}  // namespace

TEST_CASE("o_generator: fixed values") {
  const OSpaceSpec s{0, Rational(1, 2), -2};
  CHECK(o_generator(s, 0) == LaurentPoly::monomial(-2) + LaurentPoly::monomial(-1, Rational(1, 2)) +
                                 LaurentPoly::monomial(0, Rational(-1, 8)));
  CHECK(o_generator(OSpaceSpec{-1, Rational(0), -2}, 0) == LaurentPoly::monomial(-2));
  for (Exponent j = 0; j >= -5; --j) {
    const LaurentPoly g = o_generator(s, j);
    CHECK(g.min_exponent() == s.q + j);
    CHECK(g.coeff(s.q + j) == Rational(1));
    CHECK(g.max_exponent() <= s.N);
  }
}

TEST_CASE("reduce_mod_o: fixed values") {
  const OSpaceSpec s{0, Rational(1, 2), -2};
  const LaurentPoly expect = LaurentPoly::monomial(-1, Rational(-1, 2)) + LaurentPoly::monomial(0, Rational(1, 8));
  CHECK(reduce_mod_o(LaurentPoly::monomial(-2), s).canonical == expect);
  CHECK(reduce_by_elimination(LaurentPoly::monomial(-2), s).canonical == expect);
  CHECK(reduce_closed_form(LaurentPoly::monomial(-2), s).canonical == expect);
  CHECK(reduce_mod_o(LaurentPoly::monomial(s.N + 1), s).canonical.is_zero());
  CHECK(reduce_mod_o(LaurentPoly::monomial(-3), OSpaceSpec{-2, Rational(1), -1}).canonical.is_zero());
}

TEST_CASE("member_o: fixed values") {
  const OSpaceSpec s{0, Rational(1, 2), -2};
  CHECK(member_o(o_generator(s, -4), s));
  CHECK_FALSE(member_o(LaurentPoly::monomial(s.q + 1), s));
  CHECK(member_o(LaurentPoly::monomial(-2) + LaurentPoly::monomial(-1, Rational(1, 2)) +
                     LaurentPoly::monomial(0, Rational(-1, 8)),
                 s));
  CHECK(member_o(LaurentPoly{}, s));
}

TEST_CASE("reduce_mod_o: four routes agree with the dual oracle") {
  std::mt19937_64 rng(21);
  for (const OSpaceSpec& s : sample_specs()) {
    for (int trial = 0; trial < 40; ++trial) {
      const LaurentPoly f = oracle::random_poly(rng, s.q - 8, s.N + 3);
      const LaurentPoly c = reduce_mod_o(f, s).canonical;
      CHECK(c == reduce_by_elimination(f, s).canonical);
      CHECK(c == reduce_closed_form(f, s).canonical);
      if (!c.is_zero()) {
        CHECK(c.min_exponent() >= s.q + 1);
        CHECK(c.max_exponent() <= s.N);
      }
      CHECK(dual_member(f - c, s));
      CHECK(member_o(f, s) == dual_member(f, s));
      CHECK(member_o_dual(f, s) == dual_member(f, s));
    }
  }
}

TEST_CASE("reduce_mod_o: projection properties") {
  std::mt19937_64 rng(22);
  for (const OSpaceSpec& s : sample_specs()) {
    for (Exponent j = 0; j >= -6; --j) CHECK(reduce_mod_o(o_generator(s, j), s).canonical.is_zero());
    for (Exponent i = s.q + 1; i <= s.N; ++i)
      CHECK(reduce_mod_o(LaurentPoly::monomial(i), s).canonical == LaurentPoly::monomial(i));
    for (int trial = 0; trial < 20; ++trial) {
      const LaurentPoly f = oracle::random_poly(rng, s.q - 6, s.N + 2);
      const LaurentPoly g = oracle::random_poly(rng, s.q - 6, s.N + 2);
      const LaurentPoly rf = reduce_mod_o(f, s).canonical;
      CHECK(reduce_mod_o(rf, s).canonical == rf);
      CHECK(reduce_mod_o(f + g, s).canonical == rf + reduce_mod_o(g, s).canonical);
    }
  }
}

TEST_CASE("O spaces grow with q") {
  for (const OSpaceSpec& s : sample_specs()) {
    const OSpaceSpec wider{s.N, s.Q, s.q + 1};
    for (Exponent j = 0; j >= -6; --j) CHECK(member_o(o_generator(s, j), wider));
  }
}

TEST_CASE("degenerate spaces are everything") {
  const OSpaceSpec s{-3, Rational(2, 5), -3};
  CHECK(s.degenerate());
  CHECK(s.quotient_dim() == 0);
  CHECK(reduce_mod_o(LaurentPoly::monomial(-7) + LaurentPoly::monomial(4), s).canonical.is_zero());
  CHECK(member_o(LaurentPoly::monomial(-3), s));
}

TEST_CASE("phi: fixed values") {
  const LaurentPoly zm1 = LaurentPoly::monomial(-1);
  const LaurentPoly z0 = LaurentPoly::monomial(0);
  CHECK(phi(0, Rational(0), z0) == -z0);
  CHECK(phi(0, Rational(0), zm1) == zm1 + z0);
  CHECK(phi(0, Rational(0), zm1 + z0) == zm1);
  CHECK(phi(2, Rational(1, 3), LaurentPoly::monomial(5)) == LaurentPoly::monomial(5));
}

TEST_CASE("phi: definition, involution and image of O") {
  std::mt19937_64 rng(23);
  for (Exponent N : {-2, 0, 3}) {
    for (const Rational& gamma : {Rational(0), Rational(1, 2), Rational(-5, 3)}) {
      for (int trial = 0; trial < 200; ++trial) {
        const LaurentPoly f = oracle::random_poly(rng, N - 8, N + 3);
        const LaurentPoly g = phi(N, gamma, f);
        if (trial < 20) CHECK(g == phi_oracle(N, gamma, f));
        CHECK(phi(N, gamma, g) == f);
      }
      for (const Rational& Q : {Rational(1, 2), Rational(-2)}) {
        for (Exponent q = N - 4; q < N; ++q) {
          const OSpaceSpec from{N, Q, q};
          const OSpaceSpec to{N, gamma - Q - Rational(q), q};
          for (Exponent j = 0; j >= -6; --j) {
            CHECK(member_o(phi(N, gamma, o_generator(from, j)), to));
            CHECK(member_o(phi(N, gamma, o_generator(to, j)), from));
          }
        }
      }
    }
  }
}

TEST_CASE("phi maps residue kernels of monomials to residue kernels") {
  // With S(j) = z^j below N+1: phi(Res (1+x)^k x^t S) = (-1)^{t+1} Res (1+x)^{gamma-k-t} x^t S.
  const Exponent N = 2;
  const auto family = [&](Exponent j) { return j <= N ? LaurentPoly::monomial(j) : LaurentPoly{}; };
  for (const Rational& gamma : {Rational(0), Rational(3, 4)}) {
    for (const Rational& k : {Rational(1), Rational(-1, 2), Rational(2, 3)}) {
      for (Exponent t = -4; t <= N; ++t) {
        const LaurentPoly lhs = phi(N, gamma, residue_kernel(k, t, family, N));
        const LaurentPoly rhs =
            Rational(sign_power(t + 1)) * residue_kernel(gamma - k - Rational(t), t, family, N);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("reduce_mod_intersection") {
  const std::vector<OSpaceSpec> specs{{1, Rational(0), -2}, {1, Rational(1, 2), -3}, {1, Rational(1, 3), -2}};
  const auto zero = reduce_mod_intersection(LaurentPoly{}, specs);
  REQUIRE(zero.size() == 3);
  for (const auto& r : zero) CHECK(r.canonical.is_zero());

  const auto single = reduce_mod_intersection(LaurentPoly::monomial(-5), std::span(specs).first(1));
  REQUIRE(single.size() == 1);
  CHECK(single[0].canonical == reduce_mod_o(LaurentPoly::monomial(-5), specs[0]).canonical);

  const LaurentPoly g = o_generator(specs[0], 0);
  const auto parts = reduce_mod_intersection(g, specs);
  CHECK(parts[0].canonical.is_zero());
  for (std::size_t s = 1; s < specs.size(); ++s) {
    CHECK(parts[s].canonical == reduce_mod_o(g, specs[s]).canonical);
    CHECK_FALSE(parts[s].canonical.is_zero());
  }
  CHECK_FALSE(member_intersection(g, specs));
  CHECK(member_intersection(LaurentPoly::monomial(2), specs));

  const std::vector<OSpaceSpec> congruent{{1, Rational(1, 2), -2}, {1, Rational(3, 2), -2}};
  CHECK_THROWS_AS(reduce_mod_intersection(g, congruent), std::invalid_argument);
}
