#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "zhukit/errors.hpp"
#include "zhukit/formal.hpp"

namespace zhukit {

namespace {

using Witness = std::optional<std::string>;

std::vector<Partition> basis_upto(const GradedVertexAlgebra& V, long w) {
  std::vector<Partition> out;
  for (long k = V.delta(); k <= w; ++k)
    for (const auto& p : V.weight_basis(k)) out.push_back(p);
  return out;
}

std::string mismatch(const std::string& at, const IdentitySides& s) {
  return at + ": lhs " + s.lhs.to_text() + ", rhs " + s.rhs.to_text();
}

// Runs body over the grid point, turning a cutoff overrun into a skipped record.
void run_point(Report& out, const std::string& check, const std::string& params,
               const std::function<Witness()>& body) {
  try {
    const Witness w = body();
    out.add(check, params, w ? Status::fail : Status::pass, w.value_or(""));
  } catch (const CutoffError& e) {
    out.add(check, params, Status::skipped, e.what());
  }
}

std::string triple_label(const Partition& a, const Partition& b, const Partition& w) {
  return "a=" + partition_text(a) + ",b=" + partition_text(b) + ",w=" + partition_text(w);
}

std::string jkl(long j, long k, long l) {
  return "j=" + std::to_string(j) + ",k=" + std::to_string(k) + ",l=" + std::to_string(l);
}

Report check_borcherds(const Heisenberg& V, const FormalGrid& g) {
  Report out;
  const auto pairs = basis_upto(V, g.pair_weight);
  const auto ws = basis_upto(V, g.w_weight);
  for (const auto& pa : pairs)
    for (const auto& pb : pairs)
      for (const auto& pw : ws)
        run_point(out, "borcherds", triple_label(pa, pb, pw), [&]() -> Witness {
          const FockVector a = FockVector::basis(pa), b = FockVector::basis(pb), w = FockVector::basis(pw);
          for (long j = -g.max_jk; j <= g.max_jk; ++j)
            for (long k = -g.max_jk; k <= g.max_jk; ++k)
              for (long l = g.l_lo; l <= g.l_hi; ++l)
                if (const IdentitySides s = borcherds_coeff_sides(V, a, b, w, j, k, l); !s.holds())
                  return mismatch(jkl(j, k, l), s);
          return std::nullopt;
        });
  return out;
}

// Uses the least bound L and L + 2: any larger L is also admissible.
Report check_express_ysab(const Heisenberg& V, const FormalGrid& g) {
  Report out;
  const auto pairs = basis_upto(V, g.pair_weight);
  const auto ws = basis_upto(V, g.w_weight);
  for (const auto& pa : pairs)
    for (const auto& pb : pairs)
      for (const auto& pw : ws)
        run_point(out, "express_ysab", triple_label(pa, pb, pw), [&]() -> Witness {
          const FockVector a = FockVector::basis(pa), b = FockVector::basis(pb), w = FockVector::basis(pw);
          const std::int64_t L0 = product_bound(V, a, b);
          for (std::int64_t L : {L0, L0 + 2})
            for (long j = -g.max_jk; j <= g.max_jk; ++j)
              for (long k = -g.max_jk; k <= g.max_jk; ++k)
                for (long l = g.l_lo; l <= g.l_hi; ++l)
                  if (const IdentitySides s = express_ysab_sides(V, a, b, w, j, k, l, L); !s.holds())
                    return mismatch(jkl(j, k, l) + ",L=" + std::to_string(L), s);
          return std::nullopt;
        });
  return out;
}

Report check_derivation(const Heisenberg& V, const FormalGrid& g) {
  Report out;
  const auto ws = basis_upto(V, g.w_weight);
  for (const auto& pa : basis_upto(V, g.pair_weight))
    for (const auto& pw : ws)
      run_point(out, "derivation", "a=" + partition_text(pa) + ",w=" + partition_text(pw), [&]() -> Witness {
        const FockVector a = FockVector::basis(pa), w = FockVector::basis(pw);
        for (long n = -g.max_n; n <= g.max_n; ++n)
          if (const IdentitySides s = derivation_sides(V, a, n, w); !s.holds())
            return mismatch("n=" + std::to_string(n), s);
        return std::nullopt;
      });
  return out;
}

Report check_ysonea(const Heisenberg& V, const FormalGrid& g) {
  Report out;
  const auto ws = basis_upto(V, g.w_weight);
  for (const auto& pa : basis_upto(V, g.pair_weight))
    for (const auto& pw : ws)
      run_point(out, "ysonea", "a=" + partition_text(pa) + ",w=" + partition_text(pw), [&]() -> Witness {
        const FockVector a = FockVector::basis(pa), w = FockVector::basis(pw);
        for (long k = -g.max_jk; k <= g.max_jk; ++k)
          for (long l = g.l_lo; l <= g.l_hi; ++l)
            if (!ysonea_check(V, a, w, k, l))
              return mismatch("k=" + std::to_string(k) + ",l=" + std::to_string(l), ysonea_sides(V, a, w, k, l));
        return std::nullopt;
      });
  return out;
}

const std::vector<Rational>& sample_exponents() {
  static const std::vector<Rational> values{Rational(0),     Rational(1),    Rational(-1),
                                            Rational(2),     Rational(-3),   Rational(1, 2),
                                            Rational(-2, 3), Rational(7, 5)};
  return values;
}

// binom(j, .) Toeplitz matrices: L(j) L(-j) = I and L(j) L(j') = L(j + j').
Report check_toeplitz_inverse(const Heisenberg&, const FormalGrid& g) {
  Report out;
  for (const Rational& j : sample_exponents()) {
    Witness w;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(g.toeplitz_size) && !w; ++n) {
      if (binomial_toeplitz(j, n) * binomial_toeplitz(-j, n) != RationalMatrix::identity(n))
        w = "size " + std::to_string(n) + ": L(j) L(-j) != I";
      const Rational other(3, 4);
      if (!w && binomial_toeplitz(j, n) * binomial_toeplitz(other, n) != binomial_toeplitz(j + other, n))
        w = "size " + std::to_string(n) + ": L(j) L(3/4) != L(j+3/4)";
    }
    out.add("toeplitz_inverse", "j=" + j.to_string(), w ? Status::fail : Status::pass, w.value_or(""));
  }
  return out;
}

using Series = std::map<std::pair<Rational, Rational>, Rational>;

Series to_series(const MonomialExpansion& e) {
  Series s;
  for (const auto& t : e.terms) s[{t.first, t.second}] += t.coeff;
  return s;
}

// Product of the truncated expansion with (u + sign v), where (u, v) are the
// expansion's two variables.
Series times_binomial(const Series& s, int sign) {
  Series out;
  for (const auto& [e, c] : s) {
    out[{e.first + Rational(1), e.second}] += c;
    out[{e.first, e.second + Rational(1)}] += Rational(sign) * c;
  }
  return out;
}

// Entries whose inner-sum index, read off the given coordinate relative to
// base, is below order; zero coefficients are dropped.
Series restrict_inner(const Series& s, bool second, const Rational& base, long order) {
  Series out;
  for (const auto& [e, c] : s) {
    const Rational i = (second ? e.second : e.first) - base;
    if (!c.is_zero() && i < Rational(order)) out.emplace(e, c);
  }
  return out;
}

// x_then_y and y_then_x are ring maps, so multiplying the expansion of
// (x-y)^l by x - y gives that of (x-y)^{l+1}; for y_then_xy, multiplying by
// x = y + (x-y) raises j. The difference of the two expansions of (x-y)^{-1}
// is the formal delta function sum_n x^{-n-1} y^n.
Report check_iota(const Heisenberg&, const FormalGrid& g) {
  Report out;
  const long order = 8;
  const std::vector<Rational> js{Rational(0), Rational(1, 2), Rational(-1, 3)};
  for (IotaDirection dir : {IotaDirection::x_then_y, IotaDirection::y_then_x, IotaDirection::y_then_xy}) {
    Witness w;
    for (const Rational& j : js)
      for (const Rational& k : js)
        for (long l = g.l_lo; l <= g.l_hi && !w; ++l) {
          const auto here = iota_expand(dir, j, k, l, order);
          Series got, want;
          switch (dir) {
            case IotaDirection::x_then_y:
              got = restrict_inner(times_binomial(to_series(here), -1), true, k, order);
              want = restrict_inner(to_series(iota_expand(dir, j, k, l + 1, order)), true, k, order);
              break;
            case IotaDirection::y_then_x:
              got = restrict_inner(times_binomial(to_series(here), -1), false, j, order);
              want = restrict_inner(to_series(iota_expand(dir, j, k, l + 1, order)), false, j, order);
              break;
            case IotaDirection::y_then_xy:
              got = restrict_inner(times_binomial(to_series(here), 1), true, Rational(l), order);
              want = restrict_inner(to_series(iota_expand(dir, j + Rational(1), k, l, order)), true,
                                    Rational(l), order);
              break;
          }
          if (got != want)
            w = "j=" + j.to_string() + ",k=" + k.to_string() + ",l=" + std::to_string(l) +
                ": multiplication rule fails";
        }
    if (!w && dir != IotaDirection::y_then_xy) {
      // delta(x, y) = iota_{x,y} (x-y)^{-1} - iota_{y,x} (x-y)^{-1}: coefficient 1 on x^{-n-1} y^n.
      const auto xy = to_series(iota_expand(IotaDirection::x_then_y, 0, 0, -1, order));
      const auto yx = to_series(iota_expand(IotaDirection::y_then_x, 0, 0, -1, order));
      Series delta = xy;
      for (const auto& [e, c] : yx) delta[e] -= c;
      for (long n = -order; n < order && !w; ++n) {
        const auto it = delta.find({Rational(-n - 1), Rational(n)});
        if (it == delta.end() || it->second != Rational(1)) w = "delta coefficient at n=" + std::to_string(n);
      }
    }
    out.add("iota", std::string(to_string(dir)), w ? Status::fail : Status::pass, w.value_or(""));
  }
  return out;
}

Report check_sector_sum(const Heisenberg&, const FormalGrid&) {
  Report out;
  for (long T = 1; T <= 3; ++T)
    for (SeriesVariable var : {SeriesVariable::first, SeriesVariable::second}) {
      BiseriesWindow X(T, Rational(-1), Rational(1), Rational(-1), Rational(1));
      for (long p = -T; p <= T; ++p)
        for (long q = -T; q <= T; ++q) {
          FockVector v = FockVector::basis({1}, Rational(p + 2 * q + 1, T));
          v.add_term({1, 1}, Rational(p * q - 1));
          X.set(Rational(p, T), Rational(q, T), v);
        }
      Witness w;
      BiseriesWindow sum(T, X.p_lo(), X.p_hi(), X.q_lo(), X.q_hi());
      std::size_t support = 0;
      for (long s = 0; s < T; ++s) {
        const BiseriesWindow part = sector_component(X, s, var);
        support += part.entries().size();
        for (const auto& [idx, v] : part.entries()) {
          const Rational& e = var == SeriesVariable::first ? idx.first : idx.second;
          if (!(e - Rational(s, T)).is_integer()) w = "sector " + std::to_string(s) + " holds exponent " + e.to_string();
        }
        sum += part;
      }
      if (!w && support != X.entries().size()) w = "sector supports overlap";
      if (!w && sum != X) w = "components do not sum to X";
      if (!w && T == 1 && sector_component(X, 0, var) != X) w = "T=1 component differs from X";
      out.add("sector_sum", "T=" + std::to_string(T) + ",var=" + (var == SeriesVariable::first ? "first" : "second"),
              w ? Status::fail : Status::pass, w.value_or(""));
    }
  return out;
}

}  // namespace

FormalGrid FormalGrid::preset(std::string_view name) {
  FormalGrid g;
  if (name == "default") return g;
  if (name == "small") {
    g.max_jk = 2;
    g.l_lo = -2;
    g.l_hi = 2;
    g.max_n = 2;
    g.pair_weight = 1;
    g.w_weight = 2;
    g.toeplitz_size = 4;
    g.cutoff = 12;
    return g;
  }
  throw std::invalid_argument("unknown grid preset '" + std::string(name) + "'");
}

const std::vector<std::string>& formal_check_names() {
  static const std::vector<std::string> names{"borcherds",        "express_ysab", "derivation", "ysonea",
                                              "toeplitz_inverse", "iota",         "sector_sum"};
  return names;
}

Report verify_formal(std::string_view name, const FormalGrid& grid) {
  static const std::map<std::string_view, Report (*)(const Heisenberg&, const FormalGrid&)> checks{
      {"borcherds", check_borcherds},
      {"express_ysab", check_express_ysab},
      {"derivation", check_derivation},
      {"ysonea", check_ysonea},
      {"toeplitz_inverse", check_toeplitz_inverse},
      {"iota", check_iota},
      {"sector_sum", check_sector_sum}};
  const auto it = checks.find(name);
  if (it == checks.end()) throw std::invalid_argument("unknown formal check '" + std::string(name) + "'");
  const Heisenberg V(grid.cutoff);
  return it->second(V, grid);
}

}  // namespace zhukit
