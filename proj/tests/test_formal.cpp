#include <map>
#include <stdexcept>
#include <utility>

#include "doctest.h"
#include "oracles.hpp"
#include "zhukit/formal.hpp"

using namespace zhukit;

namespace {

using Bimonomial = std::pair<Rational, Rational>;
using Biseries = std::map<Bimonomial, Rational>;

Biseries collect(const MonomialExpansion& e) {
  Biseries out;
  for (const auto& t : e.terms) out[{t.first, t.second}] += t.coeff;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

FockVector basis(Partition p) { return FockVector::basis(std::move(p)); }
const FockVector h = Heisenberg::generator();

}  // namespace

TEST_CASE("iota_expand: fixed values") {
  const auto flat = iota_expand(IotaDirection::x_then_y, Rational(2), Rational(-1), 0, 5);
  REQUIRE(flat.terms.size() == 1);
  CHECK(flat.terms[0].coeff == Rational(1));
  CHECK(flat.terms[0].first == Rational(2));
  CHECK(flat.terms[0].second == Rational(-1));

  const auto xy = iota_expand(IotaDirection::x_then_y, Rational(0), Rational(0), -1, 6);
  REQUIRE(xy.terms.size() == 6);
  for (long i = 0; i < 6; ++i) {
    CHECK(xy.terms[static_cast<std::size_t>(i)].coeff == Rational(1));
    CHECK(xy.terms[static_cast<std::size_t>(i)].first == Rational(-1 - i));
    CHECK(xy.terms[static_cast<std::size_t>(i)].second == Rational(i));
  }
  const auto yx = iota_expand(IotaDirection::y_then_x, Rational(0), Rational(0), -1, 6);
  REQUIRE(yx.terms.size() == 6);
  for (long i = 0; i < 6; ++i) {
    CHECK(yx.terms[static_cast<std::size_t>(i)].coeff == Rational(-1));
    CHECK(yx.terms[static_cast<std::size_t>(i)].first == Rational(i));
    CHECK(yx.terms[static_cast<std::size_t>(i)].second == Rational(-1 - i));
  }
  CHECK_THROWS_AS(iota_expand(IotaDirection::x_then_y, Rational(0), Rational(0), 1, -1), std::invalid_argument);
}

TEST_CASE("iota_expand: multiplying (x-y)^-1 by (x-y) telescopes") {
  const long n = 7;
  const auto e = iota_expand(IotaDirection::x_then_y, Rational(0), Rational(0), -1, n);
  Biseries prod;
  for (const auto& t : e.terms) {
    prod[{t.first + 1, t.second}] += t.coeff;
    prod[{t.first, t.second + 1}] -= t.coeff;
  }
  std::erase_if(prod, [](const auto& kv) { return kv.second.is_zero(); });
  const Biseries expect{{{Rational(0), Rational(0)}, Rational(1)}, {{Rational(-n), Rational(n)}, Rational(-1)}};
  CHECK(prod == expect);
}

TEST_CASE("iota_expand: both directions agree on polynomial monomials") {
  // For l >= 0 the expansions are finite and equal.
  for (long l = 0; l <= 4; ++l) {
    const Rational j(1, 3), k(-2);
    const auto a = collect(iota_expand(IotaDirection::x_then_y, j, k, l, l + 3));
    const auto b = collect(iota_expand(IotaDirection::y_then_x, j, k, l, l + 3));
    CHECK(a == b);
    CHECK(a.size() == static_cast<std::size_t>(l + 1));
  }
}

TEST_CASE("iota_expand: y_then_xy re-expands to x^j y^k (x-y)^l") {
  // With j, l >= 0 both sides are polynomials in x, y; expand each
  // y^a (x-y)^b with the falling-factorial oracle.
  const auto to_xy = [](const Rational& ya, long b, const Rational& c, Biseries& out) {
    for (long t = 0; t <= b; ++t)
      out[{Rational(t), ya + Rational(b - t)}] += c * oracle::falling_binom(Rational(b), t) * Rational(sign_power(b - t));
  };
  for (long j = 0; j <= 3; ++j)
    for (long l = 0; l <= 2; ++l) {
      const Rational k(-1, 2);
      Biseries lhs, rhs;
      for (const auto& t : iota_expand(IotaDirection::y_then_xy, Rational(j), k, l, j + 2).terms)
        to_xy(t.first, t.second.to_long(), t.coeff, lhs);
      for (const auto& t : iota_expand(IotaDirection::x_then_y, Rational(j), k, l, l + 1).terms)
        rhs[{t.first, t.second}] += t.coeff;
      std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
      std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
      CHECK(lhs == rhs);
    }
}

TEST_CASE("BiseriesWindow: storage rules") {
  BiseriesWindow X(2, Rational(-2), Rational(2), Rational(-1), Rational(1));
  CHECK(X.contains(Rational(1, 2), Rational(-1)));
  CHECK_FALSE(X.contains(Rational(1, 3), Rational(0)));
  CHECK_FALSE(X.contains(Rational(3), Rational(0)));
  CHECK_THROWS_AS(X.at(Rational(3), Rational(0)), std::out_of_range);
  CHECK_THROWS_AS(X.set(Rational(1, 3), Rational(0), h), std::out_of_range);
  X.set(Rational(1, 2), Rational(0), h);
  CHECK(X.at(Rational(1, 2), Rational(0)) == h);
  X.set(Rational(1, 2), Rational(0), FockVector{});
  CHECK(X.entries().empty());
  CHECK(X.at(Rational(0), Rational(0)).is_zero());
  CHECK_THROWS_AS(BiseriesWindow(0, Rational(0), Rational(0), Rational(0), Rational(0)), std::invalid_argument);
  BiseriesWindow Y(2, Rational(-2), Rational(2), Rational(-1), Rational(2));
  CHECK_THROWS_AS(X += Y, std::invalid_argument);
}

TEST_CASE("sector components partition a bi-series") {
  for (long T = 1; T <= 3; ++T) {
    BiseriesWindow X(T, Rational(-2), Rational(2), Rational(-2), Rational(2));
    long count = 0;
    for (long p = -2 * T; p <= 2 * T; ++p)
      for (long q = -2 * T; q <= 2 * T; q += 2) X.set(Rational(p, T), Rational(q, T), Rational(++count, 3) * h);
    for (SeriesVariable var : {SeriesVariable::first, SeriesVariable::second}) {
      BiseriesWindow sum(T, X.p_lo(), X.p_hi(), X.q_lo(), X.q_hi());
      std::size_t total = 0;
      for (long s = 0; s < T; ++s) {
        const BiseriesWindow part = sector_component(X, s, var);
        total += part.entries().size();
        for (const auto& [idx, v] : part.entries()) {
          const Rational& e = var == SeriesVariable::first ? idx.first : idx.second;
          CHECK(((e - Rational(s, T)).is_integer()));
          CHECK(v == X.at(idx.first, idx.second));
        }
        sum += part;
      }
      CHECK(total == X.entries().size());
      CHECK(sum == X);
      if (T == 1) CHECK(sector_component(X, 0, var) == X);
    }
    CHECK_THROWS_AS(sector_component(X, T, SeriesVariable::first), std::invalid_argument);
  }
}

TEST_CASE("binomial Toeplitz matrices form a group") {
  for (const Rational& j : {Rational(1), Rational(-3), Rational(2, 5)}) {
    const RationalMatrix L = binomial_toeplitz(j, 7);
    for (std::size_t r = 0; r < 7; ++r)
      for (std::size_t c = 0; c < 7; ++c)
        CHECK(L(r, c) == (c <= r ? oracle::falling_binom(j, static_cast<long>(r - c)) : Rational(0)));
    CHECK(L * binomial_toeplitz(-j, 7) == RationalMatrix::identity(7));
  }
}

TEST_CASE("Borcherds identity: fixed cases") {
  const Heisenberg V(12);
  const FockVector one = V.vacuum();
  CHECK(borcherds_coeff_check(V, one, one, one, 1, -2, 0));
  // (h_1 h)_{-1} h = h on the left; [h_1, h_{-1}] h = h on the right.
  const IdentitySides sides = borcherds_coeff_sides(V, h, h, h, 1, -1, 0);
  CHECK(sides.holds());
  CHECK(sides.lhs == h);
  for (std::int64_t j = -2; j <= 2; ++j)
    for (std::int64_t k = -2; k <= 2; ++k)
      for (std::int64_t l = -2; l <= 2; ++l) {
        CAPTURE(j);
        CAPTURE(k);
        CAPTURE(l);
        CHECK(borcherds_coeff_check(V, h, h, basis({1, 1}), j, k, l));
        CHECK(borcherds_coeff_check(V, basis({2}), h, h, j, k, l));
        // With b = 1 both sides collapse to binom(k, -l-1) (-1)^{l+1} a_{j+k+l+1} w.
        const FockVector a = basis({2, 1});
        const FockVector w = basis({1});
        const IdentitySides s = borcherds_coeff_sides(V, a, one, w, j, k, l);
        FockVector expect = V.mode(a, j + k + l + 1, w);
        expect *= oracle::falling_binom(Rational(k), -l - 1) * Rational(sign_power(l + 1));
        CHECK(s.lhs == expect);
        CHECK(s.rhs == expect);
      }
}

TEST_CASE("single-mode expression of (a_l b)_{j+k}") {
  const Heisenberg V(12);
  CHECK(product_bound(V, h, h) == 1);
  CHECK(product_bound(V, h, V.vacuum()) == -1);
  CHECK_THROWS_AS(product_bound(V, FockVector{}, h), std::invalid_argument);
  for (std::int64_t j = -2; j <= 2; ++j)
    for (std::int64_t k = -2; k <= 2; ++k)
      for (std::int64_t l = -2; l <= 3; ++l) {
        const IdentitySides s = express_ysab_sides(V, h, h, h, j, k, l, 1);
        CHECK(s.holds());
        if (l > 1) {
          CHECK(s.lhs.is_zero());
          CHECK(s.rhs.is_zero());
        }
        CHECK(express_ysab_check(V, basis({2}), V.vacuum(), h, j, k, l, -1));
      }
  CHECK_THROWS_AS(express_ysab_sides(V, h, h, h, 0, 0, 0, 0), PreconditionError);
}

TEST_CASE("translation: (a_{-2}1)_n w = -n a_{n-1} w") {
  const Heisenberg V(12);
  for (long ww = 0; ww <= 4; ++ww)
    for (const auto& p : V.weight_basis(ww))
      for (std::int64_t n = -4; n <= 4; ++n) {
        const IdentitySides s = derivation_sides(V, h, n, basis(p));
        CHECK(s.holds());
        if (n == 0) CHECK(s.lhs.is_zero());
        const IdentitySides v = derivation_sides(V, V.vacuum(), n, basis(p));
        CHECK(v.lhs.is_zero());
        CHECK(v.rhs.is_zero());
      }
}

TEST_CASE("vacuum iterates: (1_l a)_k w = delta_{l,-1} a_k w") {
  const Heisenberg V(12);
  const FockVector a = basis({2}) + basis({1, 1});
  for (std::int64_t k = -3; k <= 3; ++k)
    for (std::int64_t l = -4; l <= 3; ++l) {
      const IdentitySides s = ysonea_sides(V, a, h, k, l);
      CHECK(s.holds());
      CHECK(s.rhs == (l == -1 ? V.mode(a, k, h) : FockVector{}));
      CHECK(ysonea_check(V, a, h, k, l));
      CHECK(ysonea_check(V, V.vacuum(), h, k, l));
    }
}

TEST_CASE("verify_formal: every check passes on the small grid") {
  const FormalGrid grid = FormalGrid::preset("small");
  for (const std::string& name : formal_check_names()) {
    CAPTURE(name);
    const Report r = verify_formal(name, grid);
    CHECK(r.ok());
    CHECK(r.count(Status::pass) > 0);
  }
  CHECK_THROWS_AS(verify_formal("nope", grid), std::invalid_argument);
}
