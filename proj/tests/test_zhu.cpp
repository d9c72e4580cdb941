#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zhukit/lemmas.hpp"
#include "zhukit/zhu.hpp"

using namespace zhukit;

namespace {

ZhuIndex index(long T, long delta, Grade n, Grade m, std::optional<Grade> p = std::nullopt) {
  ZhuIndex idx{T, delta, n, m, p};
  idx.validate();
  return idx;
}

// A spread of indices covering every indicator branch for T <= 3.
std::vector<ZhuIndex> sample_indices() {
  std::vector<ZhuIndex> out;
  for (long T = 1; T <= 3; ++T)
    for (long delta : {0L, -1L})
      for (long i1 = 0; i1 < T; ++i1)
        for (long i3 = 0; i3 < T; ++i3) out.push_back(index(T, delta, {(i1 + i3) % 2, i3}, {1 - i1 % 2, i1}));
  return out;
}

LaurentPoly z(Exponent e, Rational c = Rational(1)) { return LaurentPoly::monomial(e, std::move(c)); }

}  // namespace

TEST_CASE("delta_leq and residues") {
  CHECK(delta_leq(Rational(0), Rational(0)) == 1);
  CHECK(delta_leq(Rational(3), Rational(2)) == 0);
  CHECK(delta_leq(Rational(-1, 2), Rational(0)) == 1);
  CHECK(residue_r(0, 2, 3) == 1);
  CHECK(residue_r(2, 0, 3) == 2);
}

TEST_CASE("s_vee: brute-force definition and the duality identities") {
  for (long T = 1; T <= 6; ++T)
    for (long i1 = 0; i1 < T; ++i1)
      for (long i3 = 0; i3 < T; ++i3) {
        const ZhuIndex idx = index(T, 0, {0, i3}, {0, i1});
        for (long s = 0; s < T; ++s) {
          long expect = -1;
          for (long v = 0; v < T; ++v)
            if (((i1 - i3 - s - v) % T + T) % T == 0) expect = v;
          CHECK(s_vee(idx, s) == expect);
          CHECK(svee_identities_hold(T, i1, i3, s));
        }
      }
}

TEST_CASE("ZhuIndex: validation and grade parsing") {
  CHECK_THROWS_AS(index(0, 0, {0, 0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(index(2, 1, {0, 0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(index(2, 0, {0, 2}, {0, 0}), std::invalid_argument);
  CHECK(ZhuIndex::parse_grade("3/2", 2) == Grade{1, 1});
  CHECK(ZhuIndex::parse_grade("1+2/3", 3) == Grade{1, 2});
  CHECK(ZhuIndex::parse_grade("4", 3) == Grade{4, 0});
  CHECK_THROWS(ZhuIndex::parse_grade("1/3", 2));
  CHECK_THROWS(ZhuIndex::parse_grade("-1", 2));
}

TEST_CASE("zhu_ospace_spec: fixed values") {
  const ZhuIndex idx = index(1, 0, {0, 0}, {0, 0});
  CHECK(zhu_ospace_spec(idx, 0, 0, 0) == OSpaceSpec{-1, Rational(0), -2});
  CHECK(zhu_ospace_spec(idx, 0, 1, 1) == OSpaceSpec{1, Rational(1), -2});
}

TEST_CASE("sector Q-values are pairwise non-congruent") {
  for (const ZhuIndex& idx : sample_indices()) {
    const auto specs = sector_specs(idx, 1, 2);
    std::set<Rational> fractional;
    for (const auto& s : specs) fractional.insert(s.Q - Rational(s.Q.floor()));
    CHECK(fractional.size() == specs.size());
  }
}

TEST_CASE("f_generator: fixed value, membership and descent") {
  const ZhuIndex idx = index(1, 0, {0, 0}, {0, 0});
  CHECK(f_generator(idx, 0, 1, 1, 0) == z(-2) + z(-1));
  for (const ZhuIndex& ix : sample_indices())
    for (long s = 0; s < ix.T; ++s)
      for (Exponent j = 0; j >= -4; --j) {
        const LaurentPoly f = f_generator(ix, s, 1, 0, j);
        CHECK(f == o_generator(zhu_ospace_spec(ix, s, 1, 0), j));
        CHECK(member_o(f, zhu_ospace_spec(ix, s, 1, 0)));
      }
  // Lowering n or m enlarges the space.
  const ZhuIndex big = index(2, 0, {1, 1}, {2, 0});
  const ZhuIndex small = index(2, 0, {0, 1}, {1, 1});
  for (long s = 0; s < 2; ++s)
    for (Exponent j = 0; j >= -6; --j)
      CHECK(member_o(f_generator(big, s, 2, 1, j), zhu_ospace_spec(small, s, 2, 1)));
}

TEST_CASE("mu: fixed values") {
  const ZhuIndex idx = index(1, 0, {0, 0}, {0, 0});
  CHECK(mu(idx, 0, 0, 0, -1) == z(-1));
  CHECK(mu(idx, 0, 0, 0, -2) == z(-2));
  CHECK(mu(idx, 0, 0, 0, 0).is_zero());
  for (Exponent i = -2; i <= 1; ++i) CHECK(mu(idx, 1, 1, 0, i) == z(i));
  for (Exponent i = 2; i <= 4; ++i) CHECK(mu(idx, 1, 1, 0, i).is_zero());
}

TEST_CASE("mu: window shape, defining congruences, uniqueness and sector sum") {
  for (const ZhuIndex& idx : sample_indices())
    for (long alpha = idx.delta; alpha <= 1; ++alpha)
      for (long beta = idx.delta; beta <= 2; ++beta) {
        const MuWindow w = mu_window(idx, alpha, beta);
        if (w.degenerate()) continue;
        CHECK(w.hi - w.lo + 1 == idx.T * (w.N - w.q));
        CHECK(w.hi == alpha + beta - 1 - idx.delta);
        const auto specs = sector_specs(idx, alpha, beta);
        for (Exponent i = w.lo - 2; i <= w.hi + 2; ++i) {
          LaurentPoly total;
          for (long r = 0; r < idx.T; ++r) {
            const LaurentPoly u = mu(idx, alpha, beta, r, i);
            if (i > w.hi) {
              CHECK(u.is_zero());
              continue;
            }
            if (!u.is_zero()) {
              CHECK(u.min_exponent() >= w.lo);
              CHECK(u.max_exponent() <= w.hi);
            }
            for (long s = 0; s < idx.T; ++s) {
              const LaurentPoly target = s == r ? z(i) : LaurentPoly{};
              CHECK(reduce_by_elimination(u - target, w.modulus(s)).canonical.is_zero());
              CHECK(member_o(u - target, specs[static_cast<std::size_t>(s)]));
            }
            if (i % 3 == 0) {
              CHECK(u == mu_uncached(idx, alpha, beta, r, i, false));
              CHECK(u == mu_uncached(idx, alpha, beta, r, i, true));
            }
            total += u;
          }
          if (i <= w.hi) CHECK(member_intersection(total - z(i), specs));
        }
      }
}

TEST_CASE("mu: functional and reduction matrices describe the same system") {
  const ZhuIndex idx = index(2, -1, {1, 1}, {0, 1});
  const MuWindow w = mu_window(idx, 1, 0);
  const RationalMatrix red = mu_system_matrix(w);
  const RationalMatrix fun = mu_functional_matrix(w);
  REQUIRE(red.square());
  REQUIRE(fun.square());
  CHECK(rank(red) == red.rows());
  CHECK(rank(fun) == fun.rows());
  // Both have kernel zero, and a column combination vanishes under one iff
  // under the other: stack them and compare ranks.
  RationalMatrix both(red.rows() + fun.rows(), red.cols());
  for (std::size_t c = 0; c < red.cols(); ++c) {
    for (std::size_t r = 0; r < red.rows(); ++r) both(r, c) = red(r, c);
    for (std::size_t r = 0; r < fun.rows(); ++r) both(red.rows() + r, c) = fun(r, c);
  }
  CHECK(rank(both) == red.cols());
}

TEST_CASE("mu_combination is linear in the weights") {
  const ZhuIndex idx = index(3, 0, {0, 2}, {1, 1});
  std::map<Exponent, Rational> weights{{-4, Rational(2, 3)}, {-1, Rational(-5)}, {0, Rational(1, 7)}};
  LaurentPoly expect;
  for (const auto& [i, c] : weights) expect.add_scaled(c, mu(idx, 1, 1, 2, i));
  CHECK(mu_combination(idx, 1, 1, 2, weights) == expect);
}

TEST_CASE("pi: fixed values") {
  const ZhuIndex idx = index(1, 0, {0, 0}, {0, 0}, Grade{0, 0});
  CHECK(pi(idx, 0, 0) == z(-1));
  CHECK(pi(idx, 1, 1) == z(-1) + z(0));
  CHECK(pi(idx, 1, 0) == z(-1) + z(0));
  const ZhuIndex no_p = index(1, 0, {0, 0}, {0, 0});
  CHECK_THROWS_AS(pi(no_p, 1, 1), std::invalid_argument);
}

TEST_CASE("pi: agrees with the term-by-term residue assembly") {
  for (long T = 1; T <= 3; ++T)
    for (long i2 = 0; i2 < T; ++i2) {
      const ZhuIndex idx = index(T, 0, {1, T - 1}, {0, 0}, Grade{1, i2});
      for (long alpha = 0; alpha <= 2; ++alpha)
        for (long beta = 0; beta <= 2; ++beta) {
          const LaurentPoly p = pi(idx, alpha, beta);
          CHECK(p == pi_by_residues(idx, alpha, beta));
          const MuWindow w = mu_window(idx, alpha, beta);
          if (!p.is_zero()) {
            CHECK(p.min_exponent() >= w.lo);
            CHECK(p.max_exponent() <= w.hi);
          }
        }
    }
}

TEST_CASE("the unit of the product: z^-1 coefficient of pi(0, alpha)") {
  for (long alpha = 0; alpha <= 3; ++alpha)
    CHECK(pi(index(1, 0, {0, 0}, {0, 0}, Grade{0, 0}), 0, alpha).coeff(-1) == Rational(1));
  CHECK(pi(index(2, 0, {1, 0}, {0, 1}, Grade{0, 1}), 0, 2).coeff(-1) == Rational(0));
}

TEST_CASE("intersection_generators lie in every sector space") {
  for (const ZhuIndex& idx : sample_indices()) {
    if (idx.T == 3 && idx.delta == -1) continue;
    const auto specs = sector_specs(idx, 1, 1);
    for (const LaurentPoly& g : intersection_generators(idx, 1, 1, 3)) {
      CHECK_FALSE(g.is_zero());
      CHECK(member_intersection(g, specs));
    }
  }
}

TEST_CASE("verify_lemma: every check passes on the small grid") {
  const LemmaGrid grid = LemmaGrid::preset("small");
  for (const std::string& name : lemma_names()) {
    CAPTURE(name);
    const Report r = verify_lemma(name, grid);
    CHECK(r.ok());
    CHECK(r.count(Status::pass) > 0);
  }
  CHECK_THROWS_AS(verify_lemma("no_such_check", grid), std::invalid_argument);
  CHECK_THROWS_AS(LemmaGrid::preset("huge"), std::invalid_argument);
}
