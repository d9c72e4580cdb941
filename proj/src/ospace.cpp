#include "zhukit/ospace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace zhukit {

namespace {

// Reductions of z^e for e in [lo, q], stored as numerators over a common
// denominator per output exponent: red(z^e)[t] == num[e-lo][t] / scale[t],
// t indexing q+1..N.
struct MonomialTable {
  Exponent lo = 0;
  std::vector<BigInt> scale;
  std::vector<std::vector<BigInt>> num;
};

struct SpecLess {
  bool operator()(const OSpaceSpec& a, const OSpaceSpec& b) const {
    if (a.N != b.N) return a.N < b.N;
    if (a.q != b.q) return a.q < b.q;
    return a.Q < b.Q;
  }
};

constexpr std::size_t kTableCacheLimit = 4096;
constexpr Exponent kTableMargin = 8;

thread_local std::map<OSpaceSpec, MonomialTable, SpecLess> table_cache;

MonomialTable build_table(const OSpaceSpec& spec, Exponent lo) {
  const std::size_t b = static_cast<std::size_t>(spec.N - spec.q);
  const std::size_t rows = static_cast<std::size_t>(spec.q - lo + 1);
  const auto& binoms = binom_row(spec.Q, spec.N - lo);
  // red[k] is the reduction of z^{lo+k}; z^e = -sum_{i>=1} binom(Q,i) z^{e+i} mod O.
  std::vector<std::vector<Rational>> red(rows, std::vector<Rational>(b));
  for (std::size_t k = rows; k-- > 0;) {
    const Exponent e = lo + static_cast<Exponent>(k);
    auto& out = red[k];
    for (Exponent i = 1; e + i <= spec.N; ++i) {
      const Rational& c = binoms[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      const Exponent target = e + i;
      if (target > spec.q) {
        out[static_cast<std::size_t>(target - spec.q - 1)] -= c;
      } else {
        const auto& prev = red[static_cast<std::size_t>(target - lo)];
        for (std::size_t t = 0; t < b; ++t)
          if (!prev[t].is_zero()) out[t].sub_mul(c, prev[t]);
      }
    }
  }
  MonomialTable table;
  table.lo = lo;
  table.scale.assign(b, BigInt(1));
  for (const auto& r : red)
    for (std::size_t t = 0; t < b; ++t) mpz_lcm(table.scale[t].get_mpz_t(), table.scale[t].get_mpz_t(), r[t].raw().get_den_mpz_t());
  table.num.assign(rows, std::vector<BigInt>(b));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t t = 0; t < b; ++t) {
      const mpq_class& v = red[k][t].raw();
      if (sgn(v) == 0) continue;
      mpz_divexact(table.num[k][t].get_mpz_t(), table.scale[t].get_mpz_t(), v.get_den_mpz_t());
      table.num[k][t] *= v.get_num();
    }
  return table;
}

const MonomialTable& table_for(const OSpaceSpec& spec, Exponent lo) {
  auto it = table_cache.find(spec);
  if (it != table_cache.end() && it->second.lo <= lo) return it->second;
  if (it == table_cache.end() && table_cache.size() >= kTableCacheLimit) table_cache.clear();
  const Exponent want = std::min(lo, spec.q) - kTableMargin;
  MonomialTable table = build_table(spec, want);
  return table_cache.insert_or_assign(spec, std::move(table)).first->second;
}

}  // namespace

void clear_reduction_cache() { table_cache.clear(); }

ReducedForm reduce_mod_o(const LaurentPoly& f, const OSpaceSpec& spec) {
  ReducedForm out{LaurentPoly{}, spec};
  if (spec.degenerate() || f.is_zero()) return out;
  const Exponent lo = f.min_exponent();
  if (lo > spec.q) {
    out.canonical = f.restricted(lo, spec.N);
    return out;
  }
  const MonomialTable& table = table_for(spec, lo);
  const std::size_t b = static_cast<std::size_t>(spec.N - spec.q);
  // f = F / den with F integral.
  BigInt den(1);
  for (const auto& [e, c] : f) {
    if (e > spec.N) break;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  std::vector<BigInt> acc(b);
  BigInt scaled;
  for (const auto& [e, c] : f) {
    if (e > spec.N) break;
    mpz_divexact(scaled.get_mpz_t(), den.get_mpz_t(), c.raw().get_den_mpz_t());
    scaled *= c.raw().get_num();
    if (e > spec.q) {
      const std::size_t t = static_cast<std::size_t>(e - spec.q - 1);
      mpz_addmul(acc[t].get_mpz_t(), scaled.get_mpz_t(), table.scale[t].get_mpz_t());
      continue;
    }
    const auto& row = table.num[static_cast<std::size_t>(e - table.lo)];
    for (std::size_t t = 0; t < b; ++t)
      if (sgn(row[t]) != 0) mpz_addmul(acc[t].get_mpz_t(), scaled.get_mpz_t(), row[t].get_mpz_t());
  }
  LaurentPoly::Terms terms;
  for (std::size_t t = 0; t < b; ++t) {
    if (sgn(acc[t]) == 0) continue;
    terms.emplace_hint(terms.end(), spec.q + 1 + static_cast<Exponent>(t),
                       Rational(acc[t], BigInt(den * table.scale[t])));
  }
  out.canonical = LaurentPoly(std::move(terms));
  return out;
}

LaurentPoly o_generator(const OSpaceSpec& spec, Exponent j) {
  if (j > 0) throw std::invalid_argument("o_generator: j must be <= 0");
  LaurentPoly::Terms terms;
  const Exponent base = checked_add(spec.q, j);
  if (base > spec.N) return {};
  const auto& row = binom_row(spec.Q, spec.N - base);
  for (Exponent i = 0; base + i <= spec.N; ++i)
    if (!row[static_cast<std::size_t>(i)].is_zero()) terms.emplace_hint(terms.end(), base + i, row[static_cast<std::size_t>(i)]);
  return LaurentPoly(std::move(terms));
}

ReducedForm reduce_by_elimination(const LaurentPoly& f, const OSpaceSpec& spec) {
  ReducedForm out{LaurentPoly{}, spec};
  if (spec.degenerate() || f.is_zero()) return out;
  const Exponent lo = f.min_exponent();
  if (lo > spec.q) {
    out.canonical = f.restricted(lo, spec.N);
    return out;
  }
  // Dense buffer over [lo, N]; eliminate the lowest exponent until it exceeds q.
  const std::size_t width = static_cast<std::size_t>(spec.N - lo + 1);
  std::vector<Rational> dense(width);
  for (const auto& [e, c] : f.restricted(lo, spec.N)) dense[static_cast<std::size_t>(e - lo)] = c;
  const auto& row = binom_row(spec.Q, spec.N - lo);
  Rational c;
  for (Exponent e = lo; e <= spec.q; ++e) {
    Rational& lead = dense[static_cast<std::size_t>(e - lo)];
    if (lead.is_zero()) continue;
    // subtract c * g_{e-q}, whose terms are binom(Q,i) z^{e+i}
    c = lead;
    lead = Rational(0);
    for (Exponent i = 1; e + i <= spec.N; ++i) {
      const Rational& b = row[static_cast<std::size_t>(i)];
      if (!b.is_zero()) dense[static_cast<std::size_t>(e + i - lo)].sub_mul(c, b);
    }
  }
  LaurentPoly::Terms terms;
  for (Exponent e = spec.q + 1; e <= spec.N; ++e) {
    const Rational& c = dense[static_cast<std::size_t>(e - lo)];
    if (!c.is_zero()) terms.emplace_hint(terms.end(), e, c);
  }
  out.canonical = LaurentPoly(std::move(terms));
  return out;
}

ReducedForm reduce_closed_form(const LaurentPoly& f, const OSpaceSpec& spec) {
  ReducedForm out{LaurentPoly{}, spec};
  if (spec.degenerate() || f.is_zero()) return out;
  const std::size_t b = static_cast<std::size_t>(spec.N - spec.q);
  const auto& down = binom_row(-spec.Q, std::max<Exponent>(0, spec.N - f.min_exponent()));
  const auto& up = binom_row(spec.Q, spec.N - spec.q);
  std::vector<Rational> h(b);
  for (std::size_t t = 0; t < b; ++t) {
    const Exponent exp = spec.q + 1 + static_cast<Exponent>(t);
    for (const auto& [e, c] : f) {
      if (e > exp) break;
      h[t].add_mul(c, down[static_cast<std::size_t>(exp - e)]);
    }
  }
  LaurentPoly::Terms terms;
  for (std::size_t k = 0; k < b; ++k) {
    Rational acc;
    for (std::size_t t = 0; t <= k; ++t)
      if (!h[t].is_zero()) acc.add_mul(h[t], up[k - t]);
    if (!acc.is_zero()) terms.emplace_hint(terms.end(), spec.q + 1 + static_cast<Exponent>(k), std::move(acc));
  }
  out.canonical = LaurentPoly(std::move(terms));
  return out;
}

bool member_o(const LaurentPoly& f, const OSpaceSpec& spec) {
  return reduce_mod_o(f, spec).canonical.is_zero();
}

bool member_o_dual(const LaurentPoly& f, const OSpaceSpec& spec) {
  if (spec.degenerate()) return true;
  if (f.is_zero()) return true;
  const Rational minus_q = -spec.Q;
  const auto& row = binom_row(minus_q, std::max<Exponent>(0, spec.N - f.min_exponent()));
  for (Exponent t = spec.q + 1; t <= spec.N; ++t) {
    Rational acc;
    for (const auto& [e, c] : f) {
      if (e > t) break;
      acc.add_mul(c, row[static_cast<std::size_t>(t - e)]);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

LaurentPoly phi(Exponent N, const Rational& gamma, const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [i, c] : f) {
    if (i > N) {
      out.add_term(i, c);
      continue;
    }
    const Rational shift = gamma - Rational(static_cast<long>(i));
    const Rational signed_c = sign_power(i + 1) > 0 ? c : -c;
    const auto& row = binom_row(shift, N - i);
    for (Exponent j = 0; i + j <= N; ++j) {
      const Rational& b = row[static_cast<std::size_t>(j)];
      if (!b.is_zero()) out.add_term(i + j, signed_c * b);
    }
  }
  return out;
}

std::vector<ReducedForm> reduce_mod_intersection(const LaurentPoly& f,
                                                 std::span<const OSpaceSpec> specs) {
  for (std::size_t a = 0; a < specs.size(); ++a)
    for (std::size_t b = a + 1; b < specs.size(); ++b)
      if ((specs[a].Q - specs[b].Q).is_integer())
        throw std::invalid_argument("reduce_mod_intersection: Q-values " + specs[a].Q.to_string() +
                                    " and " + specs[b].Q.to_string() + " are congruent mod Z");
  std::vector<ReducedForm> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(reduce_mod_o(f, s));
  return out;
}

bool member_intersection(const LaurentPoly& f, std::span<const OSpaceSpec> specs) {
  for (const auto& s : specs)
    if (!member_o(f, s)) return false;
  return true;
}

}  // namespace zhukit
