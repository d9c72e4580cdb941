#include "zhukit/zhu.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "zhukit/matrix.hpp"

namespace zhukit {

namespace {

std::string grade_text(const Grade& g, long T) { return g.value(T).to_string(); }

}  // namespace

void ZhuIndex::validate() const {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (delta > 0) throw std::invalid_argument("delta must be <= 0");
  auto check = [this](const Grade& g, const char* name) {
    if (g.l < 0 || g.i < 0 || g.i >= T)
      throw std::invalid_argument(std::string("grade ") + name + " is not in (1/T)N with 0 <= i < T");
  };
  check(n, "n");
  check(m, "m");
  if (p) check(*p, "p");
}

Grade ZhuIndex::parse_grade(const std::string& text, long T) {
  Rational v;
  const auto plus = text.find('+');
  if (plus != std::string::npos && plus > 0)
    v = Rational::parse(text.substr(0, plus)) + Rational::parse(text.substr(plus + 1));
  else
    v = Rational::parse(text);
  const Rational scaled = v * Rational(T);
  if (!scaled.is_integer() || v.sign() < 0)
    throw std::invalid_argument("grade '" + text + "' is not a non-negative multiple of 1/" + std::to_string(T));
  const long k = scaled.to_long();
  return Grade{k / T, k % T};
}

std::string ZhuIndex::label() const {
  std::ostringstream os;
  os << "T=" << T << ",delta=" << delta << ",n=" << grade_text(n, T) << ",m=" << grade_text(m, T);
  if (p) os << ",p=" << grade_text(*p, T);
  return os.str();
}

int delta_leq(const Rational& i, const Rational& j) { return i <= j ? 1 : 0; }

long residue_r(long i, long j, long T) {
  const long d = (i - j) % T;
  return d < 0 ? d + T : d;
}

long s_vee(const ZhuIndex& idx, long s) { return residue_r(idx.m.i - idx.n.i, s, idx.T); }

OSpaceSpec zhu_ospace_spec(const ZhuIndex& idx, long s, long alpha, long beta) {
  const long l1 = idx.m.l, i1 = idx.m.i, l3 = idx.n.l, i3 = idx.n.i;
  const long ds = s <= i1 ? 1 : 0;
  const long dt = idx.T <= s + i3 ? 1 : 0;
  return OSpaceSpec{alpha + beta - 1 - idx.delta, Rational(alpha - 1 + l1 + ds) + Rational(s, idx.T),
                    -l1 - l3 - ds - dt - 1};
}

std::vector<OSpaceSpec> sector_specs(const ZhuIndex& idx, long alpha, long beta) {
  std::vector<OSpaceSpec> out;
  for (long s = 0; s < idx.T; ++s) out.push_back(zhu_ospace_spec(idx, s, alpha, beta));
  return out;
}

LaurentPoly f_generator(const ZhuIndex& idx, long s, long alpha, long beta, Exponent j) {
  return o_generator(zhu_ospace_spec(idx, s, alpha, beta), j);
}

MuWindow mu_window(const ZhuIndex& idx, long alpha, long beta) {
  MuWindow w;
  const long l1 = idx.m.l, i1 = idx.m.i, l3 = idx.n.l;
  w.N = alpha + beta - 1 - idx.delta;
  w.q = -l1 - l3 - 3;
  w.hi = w.N;
  w.lo = w.degenerate() ? w.N + 1 : w.N + 1 - idx.T * (w.N - w.q);
  for (long s = 0; s < idx.T; ++s)
    w.Qs.push_back(Rational(alpha - 1 + l1 + (s <= i1 ? 1 : 0)) + Rational(s, idx.T));
  return w;
}

RationalMatrix mu_system_matrix(const MuWindow& w) {
  const long T = static_cast<long>(w.Qs.size());
  const Exponent b = w.N - w.q;
  const std::size_t order = static_cast<std::size_t>(T * b);
  RationalMatrix m(order, order);
  for (std::size_t col = 0; col < order; ++col) {
    const LaurentPoly mono = LaurentPoly::monomial(w.lo + static_cast<Exponent>(col));
    for (long s = 0; s < T; ++s)
      for (const auto& [t, c] : reduce_mod_o(mono, w.modulus(s)).canonical)
        m(static_cast<std::size_t>(s * b + (t - w.q - 1)), col) = c;
  }
  return m;
}

RationalMatrix mu_functional_matrix(const MuWindow& w) {
  const long T = static_cast<long>(w.Qs.size());
  const Exponent b = w.N - w.q;
  const std::size_t order = static_cast<std::size_t>(T * b);
  RationalMatrix m(order, order);
  for (long s = 0; s < T; ++s) {
    const auto& row = binom_row(-w.Qs[static_cast<std::size_t>(s)], w.N - w.lo);
    for (Exponent t = w.q + 1; t <= w.N; ++t)
      for (std::size_t col = 0; col < order; ++col) {
        const Exponent e = w.lo + static_cast<Exponent>(col);
        if (e > t) break;
        m(static_cast<std::size_t>(s * b + (t - w.q - 1)), col) = row[static_cast<std::size_t>(t - e)];
      }
  }
  return m;
}

namespace {

// Key: (T, N, q, alpha-1+l1, i1, r). Q_s = (alpha-1+l1) + d(s<=i1) + s/T.
using MuKey = std::tuple<long, Exponent, Exponent, long, long, long>;

struct MuCache {
  std::mutex lock;
  std::map<MuKey, std::shared_ptr<const RationalMatrix>> solutions;
};

MuCache& mu_cache() {
  static MuCache cache;
  return cache;
}

// a^{-1} mod a prime p > a > 0, for p below 2^32.
std::uint64_t modular_inverse(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  for (a %= p; e > 0; e >>= 1, a = a * a % p)
    if (e & 1) result = result * a % p;
  return result;
}

// Solutions X_t of the functional system with right-hand side the unit
// vector at row (r, t), one column per t = q+1..N.
std::shared_ptr<const RationalMatrix> sector_block(const ZhuIndex& idx, long alpha, const MuWindow& w, long r) {
  const MuKey k{idx.T, w.N, w.q, alpha - 1 + idx.m.l, idx.m.i, r};
  auto& cache = mu_cache();
  {
    std::lock_guard g(cache.lock);
    if (auto it = cache.solutions.find(k); it != cache.solutions.end()) return it->second;
  }
  const Exponent b = w.N - w.q;
  const long T = idx.T;
  const std::size_t order = static_cast<std::size_t>(T * b);
  const std::size_t width = order + static_cast<std::size_t>(b);
  const Exponent span = w.N - w.lo;
  // Entry ((s,t), e) is binom(-Q_s, t-e); filled mod p from the recurrence
  // binom(x, d) = binom(x, d-1) (x-d+1) / d, one row of values per sector.
  ModularSystem sys;
  sys.n = order;
  sys.k = static_cast<std::size_t>(b);
  sys.reduce = [&](std::uint64_t p, std::vector<std::uint64_t>& out) {
    if (static_cast<std::uint64_t>(span) >= p) return false;
    std::vector<std::uint64_t> inv(static_cast<std::size_t>(span) + 1, 1);
    for (Exponent d = 2; d <= span; ++d)
      inv[static_cast<std::size_t>(d)] = p - (p / static_cast<std::uint64_t>(d)) * inv[p % static_cast<std::uint64_t>(d)] % p;
    std::vector<std::uint64_t> vals(static_cast<std::size_t>(span) + 1);
    for (long s = 0; s < T; ++s) {
      const Rational& q = w.Qs[static_cast<std::size_t>(s)];
      const std::uint64_t den = mpz_fdiv_ui(q.denominator().get_mpz_t(), p);
      if (den == 0) return false;
      const std::uint64_t num = mpz_fdiv_ui(q.numerator().get_mpz_t(), p);
      // x = -Q_s mod p
      const std::uint64_t x = (p - num % p) % p * modular_inverse(den, p) % p;
      vals[0] = 1;
      for (Exponent d = 1; d <= span; ++d) {
        const std::uint64_t f = (x + p - static_cast<std::uint64_t>(d - 1) % p) % p;
        vals[static_cast<std::size_t>(d)] = vals[static_cast<std::size_t>(d - 1)] * f % p * inv[static_cast<std::size_t>(d)] % p;
      }
      for (Exponent t = w.q + 1; t <= w.N; ++t) {
        const std::size_t row = static_cast<std::size_t>(s * b + (t - w.q - 1));
        std::uint64_t* dst = out.data() + row * width;
        for (Exponent e = w.lo; e <= t && e - w.lo < static_cast<Exponent>(order); ++e)
          dst[e - w.lo] = vals[static_cast<std::size_t>(t - e)];
        if (s == r) dst[order + static_cast<std::size_t>(t - w.q - 1)] = 1;
      }
    }
    return true;
  };
  std::optional<RationalMatrix> m, rhs;
  auto exact = [&] {
    if (m) return;
    m = mu_functional_matrix(w);
    rhs = RationalMatrix(order, static_cast<std::size_t>(b));
    for (Exponent t = 0; t < b; ++t)
      (*rhs)(static_cast<std::size_t>(r * b + t), static_cast<std::size_t>(t)) = Rational(1);
  };
  sys.verify = [&](const RationalMatrix& x) {
    exact();
    return is_solution(*m, *rhs, x);
  };
  sys.fallback = [&] {
    exact();
    return solve_exact(*m, *rhs);
  };
  auto x = solve_modular(sys);
  if (!x) throw std::logic_error("mu: singular defining system for " + idx.label());
  auto shared = std::make_shared<const RationalMatrix>(std::move(*x));
  std::lock_guard g(cache.lock);
  return cache.solutions.try_emplace(k, std::move(shared)).first->second;
}

bool mu_vanishes(const ZhuIndex& idx, long alpha, long beta, long r, const MuWindow& w, Exponent i) {
  if (r < 0 || r >= idx.T) throw std::invalid_argument("mu: sector r out of range");
  return i >= alpha + beta - idx.delta || w.degenerate();
}

}  // namespace

LaurentPoly mu_combination(const ZhuIndex& idx, long alpha, long beta, long r,
                           const std::map<Exponent, Rational>& weights) {
  const MuWindow w = mu_window(idx, alpha, beta);
  if (r < 0 || r >= idx.T) throw std::invalid_argument("mu: sector r out of range");
  // Right-hand side of z^i in the functional form: binom(-Q_r, t-i) at (r, t).
  const Exponent b = w.N - w.q;
  std::vector<Rational> target(static_cast<std::size_t>(b));
  bool any = false;
  for (const auto& [i, c] : weights) {
    if (c.is_zero() || mu_vanishes(idx, alpha, beta, r, w, i)) continue;
    const auto& coeffs = binom_row(-w.Qs[static_cast<std::size_t>(r)], w.N - i);
    for (Exponent t = std::max(i, w.q + 1); t <= w.N; ++t)
      target[static_cast<std::size_t>(t - w.q - 1)].add_mul(c, coeffs[static_cast<std::size_t>(t - i)]);
    any = true;
  }
  if (!any) return {};
  const auto block = sector_block(idx, alpha, w, r);
  LaurentPoly::Terms terms;
  for (std::size_t row = 0; row < block->rows(); ++row) {
    Rational acc;
    for (std::size_t col = 0; col < target.size(); ++col)
      if (!target[col].is_zero()) acc.add_mul(target[col], (*block)(row, col));
    if (!acc.is_zero()) terms.emplace_hint(terms.end(), w.lo + static_cast<Exponent>(row), std::move(acc));
  }
  return LaurentPoly(std::move(terms));
}

LaurentPoly mu(const ZhuIndex& idx, long alpha, long beta, long r, Exponent i) {
  return mu_combination(idx, alpha, beta, r, {{i, Rational(1)}});
}

LaurentPoly mu_uncached(const ZhuIndex& idx, long alpha, long beta, long r, Exponent i, bool reverse_rows) {
  const MuWindow w = mu_window(idx, alpha, beta);
  if (mu_vanishes(idx, alpha, beta, r, w, i)) return {};
  const Exponent b = w.N - w.q;
  RationalMatrix m = mu_system_matrix(w);
  RationalMatrix rhs(m.rows(), 1);
  for (const auto& [t, c] : reduce_mod_o(LaurentPoly::monomial(i), w.modulus(r)).canonical)
    rhs(static_cast<std::size_t>(r * b + (t - w.q - 1)), 0) = c;
  if (reverse_rows) {
    const std::size_t n = m.rows();
    for (std::size_t a = 0; a < n / 2; ++a) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(a, c), m(n - 1 - a, c));
      std::swap(rhs(a, 0), rhs(n - 1 - a, 0));
    }
  }
  auto x = solve_exact(m, rhs);
  if (!x) throw std::logic_error("mu: singular defining system for " + idx.label());
  LaurentPoly out;
  for (std::size_t row = 0; row < x->rows(); ++row) out.add_term(w.lo + static_cast<Exponent>(row), (*x)(row, 0));
  return out;
}

namespace {

struct PiData {
  long r;
  long l2;
  long D;
  Rational Qr;
  Exponent top;  // mu(r, j) = 0 for j > top
};

PiData pi_data(const ZhuIndex& idx, long alpha, long beta) {
  if (!idx.p) throw std::invalid_argument("pi: the index needs a p grade");
  const long T = idx.T;
  const long l1 = idx.m.l, i1 = idx.m.i, l2 = idx.p->l, i2 = idx.p->i, l3 = idx.n.l, i3 = idx.n.i;
  const long r = residue_r(i2, i3, T);
  const long dr = r <= i1 ? 1 : 0;
  const long D = -l1 - l3 + l2 - dr - (T <= r + i3 ? 1 : 0);
  return PiData{r, l2, D, Rational(alpha - 1 + l1 + dr) + Rational(r, T), alpha + beta - idx.delta - 1};
}

}  // namespace

LaurentPoly pi(const ZhuIndex& idx, long alpha, long beta) {
  const PiData d = pi_data(idx, alpha, beta);
  // sum_i binom(D,i) sum_k binom(Q_r,k) mu(r, D-i+k), collected per mu index.
  std::map<Exponent, Rational> weights;
  for (long i = 0; i <= d.l2; ++i) {
    const Rational outer = binom(Rational(d.D), i);
    if (outer.is_zero()) continue;
    for (Exponent k = 0; d.D - i + k <= d.top; ++k) {
      const Rational& c = binom(d.Qr, k);
      if (c.is_zero()) {
        if (d.Qr.is_integer() && d.Qr.sign() >= 0) break;
        continue;
      }
      weights[d.D - i + k].add_mul(outer, c);
    }
  }
  return mu_combination(idx, alpha, beta, d.r, weights);
}

LaurentPoly pi_by_residues(const ZhuIndex& idx, long alpha, long beta) {
  const PiData d = pi_data(idx, alpha, beta);
  const LaurentFamily family = [&](Exponent j) { return mu(idx, alpha, beta, d.r, j); };
  LaurentPoly out;
  for (long i = 0; i <= d.l2; ++i)
    out.add_scaled(binom(Rational(d.D), i), residue_kernel(d.Qr, d.D - i, family, d.top));
  return out;
}

std::vector<LaurentPoly> intersection_generators(const ZhuIndex& idx, long alpha, long beta, long depth) {
  const MuWindow w = mu_window(idx, alpha, beta);
  std::vector<LaurentPoly> out;
  const auto specs = sector_specs(idx, alpha, beta);
  if (w.lo <= w.hi) {
    // Kernel of the window -> (+)_s Q[z,z^-1]/O_s map, one row per quotient coordinate.
    std::size_t rows = 0;
    for (const auto& sp : specs) rows += static_cast<std::size_t>(sp.quotient_dim());
    const std::size_t cols = static_cast<std::size_t>(w.hi - w.lo + 1);
    RationalMatrix m(rows, cols);
    for (std::size_t col = 0; col < cols; ++col) {
      const LaurentPoly mono = LaurentPoly::monomial(w.lo + static_cast<Exponent>(col));
      std::size_t base = 0;
      for (const auto& sp : specs) {
        for (const auto& [t, c] : reduce_mod_o(mono, sp).canonical)
          m(base + static_cast<std::size_t>(t - sp.q - 1), col) = c;
        base += static_cast<std::size_t>(sp.quotient_dim());
      }
    }
    for (const auto& v : nullspace(m)) {
      LaurentPoly f;
      for (std::size_t col = 0; col < cols; ++col) f.add_term(w.lo + static_cast<Exponent>(col), v[col]);
      out.push_back(std::move(f));
    }
  }
  for (Exponent e = w.lo - 1; e >= w.lo - depth; --e) {
    LaurentPoly g = LaurentPoly::monomial(e);
    for (long s = 0; s < idx.T; ++s) g -= mu(idx, alpha, beta, s, e);
    out.push_back(std::move(g));
  }
  return out;
}

void clear_mu_cache() {
  auto& cache = mu_cache();
  std::lock_guard g(cache.lock);
  cache.solutions.clear();
}

}  // namespace zhukit
