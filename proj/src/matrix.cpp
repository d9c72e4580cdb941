#include "zhukit/matrix.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace zhukit {

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Scales each row of [a | b] to integers; returns the per-row multipliers.
IntMatrix integer_rows(const RationalMatrix& a, const RationalMatrix* b, std::vector<BigInt>& scale) {
  const std::size_t extra = b ? b->cols() : 0;
  IntMatrix out(a.rows(), std::vector<BigInt>(a.cols() + extra));
  scale.assign(a.rows(), BigInt(1));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).raw().get_den_mpz_t());
    for (std::size_t c = 0; c < extra; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*b)(r, c).raw().get_den_mpz_t());
    scale[r] = l;
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a(r, c).raw().get_num() * (l / a(r, c).raw().get_den());
    for (std::size_t c = 0; c < extra; ++c)
      out[r][a.cols() + c] = (*b)(r, c).raw().get_num() * (l / (*b)(r, c).raw().get_den());
  }
  return out;
}

// In-place Bareiss forward elimination over the first n columns.
// Returns false if a zero pivot column is met (singular); `sign` tracks row swaps.
bool bareiss(IntMatrix& m, std::size_t n, int& sign) {
  sign = 1;
  BigInt prev = 1;
  const std::size_t width = m.empty() ? 0 : m[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return false;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < width; ++j) {
        BigInt& e = m[i][j];
        e = e * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return true;
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = Rational(1);
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Rational det_exact(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("det_exact: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  std::vector<BigInt> scale;
  IntMatrix a = integer_rows(m, nullptr, scale);
  int sign = 1;
  if (!bareiss(a, n, sign)) return Rational(0);
  BigInt den = 1;
  for (const auto& s : scale) den *= s;
  return Rational(sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]), den);
}

std::optional<RationalMatrix> solve_exact(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve_exact: shape mismatch");
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  std::vector<BigInt> scale;
  IntMatrix m = integer_rows(a, &b, scale);
  int sign = 1;
  if (!bareiss(m, n, sign)) return std::nullopt;
  RationalMatrix x(n, k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      mpq_class acc(m[ii][n + col]);
      for (std::size_t j = ii + 1; j < n; ++j)
        if (m[ii][j] != 0) acc -= mpq_class(m[ii][j]) * x(j, col).raw();
      acc /= mpq_class(m[ii][ii]);
      x(ii, col) = Rational(acc);
    }
  }
  return x;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = Rational(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix w = m;
  return rref(w).size();
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  RationalMatrix w = m;
  const auto pivots = rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

using u64 = std::uint64_t;

// Primes stay below 2^28 so sums of 255 products fit in 64 bits.
u64 mul_mod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) r = mul_mod(r, a, p);
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// Primes just above 2^27, generated once.
const std::vector<u64>& word_primes(std::size_t count) {
  static std::mutex lock;
  static std::vector<u64> primes;
  std::lock_guard g(lock);
  BigInt cur = BigInt(1) << 27;
  if (!primes.empty()) cur = BigInt(static_cast<unsigned long>(primes.back()));
  while (primes.size() < count) {
    mpz_nextprime(cur.get_mpz_t(), cur.get_mpz_t());
    primes.push_back(static_cast<u64>(cur.get_ui()));
  }
  return primes;
}

// x mod p for x < 2^64 by Barrett reduction with r = floor(2^64 / p).
struct Barrett {
  u64 p;
  u64 r;
  explicit Barrett(u64 prime) : p(prime), r(static_cast<u64>((static_cast<unsigned __int128>(1) << 64) / prime)) {}
  u64 reduce(u64 x) const {
    const u64 q = static_cast<u64>((static_cast<unsigned __int128>(x) * r) >> 64);
    u64 out = x - q * p;
    while (out >= p) out -= p;
    return out;
  }
};

// Solves A X = B mod p in place on the reduced [A | B]; false if singular.
//
// p < 2^28, so a product of two residues is below 2^56 and up to 255 of them
// can be added to a residue without overflowing 64 bits. Row updates are
// therefore left unreduced and the active block is reduced every 255 steps.
bool solve_mod_p(std::vector<u64>& m, std::size_t n, std::size_t k, u64 p, std::vector<u64>& x) {
  constexpr std::size_t lazy_steps = 255;
  const std::size_t w = n + k;
  const Barrett br(p);
  std::vector<std::uint32_t> pivot_row(w);
  for (std::size_t col = 0; col < n; ++col) {
    if (col > 0 && col % lazy_steps == 0)
      for (std::size_t r = col; r < n; ++r)
        for (std::size_t j = col; j < w; ++j) m[r * w + j] = br.reduce(m[r * w + j]);
    std::size_t piv = col;
    for (; piv < n; ++piv) {
      u64& e = m[piv * w + col];
      e = br.reduce(e);
      if (e != 0) break;
    }
    if (piv == n) return false;
    if (piv != col)
      for (std::size_t j = 0; j < w; ++j) std::swap(m[piv * w + j], m[col * w + j]);
    u64* prow = &m[col * w];
    const u64 inv = inv_mod(prow[col], p);
    for (std::size_t j = col; j < w; ++j) {
      prow[j] = br.reduce(br.reduce(prow[j]) * inv);
      pivot_row[j] = static_cast<std::uint32_t>(prow[j]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      u64* row = &m[r * w];
      const u64 f = br.reduce(row[col]);
      row[col] = 0;
      if (f == 0) continue;
      const std::uint32_t nf = static_cast<std::uint32_t>(p - f);
      for (std::size_t j = col + 1; j < w; ++j) row[j] += static_cast<u64>(nf) * pivot_row[j];
    }
  }
  // Unit upper triangular: back substitution.
  x.assign(n * k, 0);
  for (std::size_t r = n; r-- > 0;)
    for (std::size_t c = 0; c < k; ++c) {
      u64 acc = m[r * w + n + c];
      for (std::size_t j = r + 1; j < n; ++j)
        if (m[r * w + j] != 0) acc = br.reduce(acc + (p - m[r * w + j]) * x[j * k + c]);
      x[r * k + c] = acc;
    }
  return true;
}

// Wang rational reconstruction of u mod M with |num|, den <= sqrt(M/2).
bool reconstruct(const BigInt& u, const BigInt& M, const BigInt& bound, mpq_class& out) {
  BigInt r0 = M, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt qt = r0 / r1;
    BigInt r2 = r0 - qt * r1;
    BigInt t2 = t0 - qt * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

// Exact check of A X = B, each row of A | B scaled to integers and each
// column of X scaled by the lcm of its denominators.
bool verify_solution(const IntMatrix& ab, std::size_t n, std::size_t k, const RationalMatrix& x) {
  std::vector<BigInt> col_den(k, BigInt(1));
  std::vector<std::vector<BigInt>> y(n, std::vector<BigInt>(k));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < n; ++r)
      mpz_lcm(col_den[c].get_mpz_t(), col_den[c].get_mpz_t(), x(r, c).raw().get_den_mpz_t());
    for (std::size_t r = 0; r < n; ++r) y[r][c] = x(r, c).raw().get_num() * (col_den[c] / x(r, c).raw().get_den());
  }
  BigInt acc;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(ab[r][j]) != 0 && sgn(y[j][c]) != 0) mpz_addmul(acc.get_mpz_t(), ab[r][j].get_mpz_t(), y[j][c].get_mpz_t());
      if (acc != ab[r][n + c] * col_den[c]) return false;
    }
  return true;
}

}  // namespace

std::optional<RationalMatrix> solve_modular(const ModularSystem& sys) {
  const std::size_t n = sys.n, k = sys.k;
  if (n == 0) return RationalMatrix(0, k);
  constexpr std::size_t max_primes = 600;
  constexpr int max_bad = 3;
  std::vector<BigInt> residue(n * k);  // symmetric: |residue| <= modulus / 2
  BigInt modulus = 1;
  std::vector<u64> buffer, xp;
  int bad = 0;
  std::size_t used = 0;
  BigInt shifted, bound, half;
  mpq_class value;
  auto candidate_from = [&](auto&& entry) {
    RationalMatrix x(n, k);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < k; ++c) x(r, c) = entry(r * k + c);
    return x;
  };
  for (std::size_t pi = 0; pi < max_primes; ++pi) {
    const u64 p = word_primes(pi + 1)[pi];
    buffer.assign(n * (n + k), 0);
    if (!sys.reduce(p, buffer) || !solve_mod_p(buffer, n, k, p, xp)) {
      if (++bad >= max_bad && used == 0) break;
      continue;
    }
    ++used;
    // Garner step with the digit h taken in (-p/2, p/2].
    const u64 minv = inv_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
    bool unchanged = true;
    for (std::size_t e = 0; e < n * k; ++e) {
      const u64 cur = mpz_fdiv_ui(residue[e].get_mpz_t(), p);
      const u64 diff = xp[e] >= cur ? xp[e] - cur : xp[e] + p - cur;
      const u64 h = mul_mod(diff, minv, p);
      if (h == 0) continue;
      unchanged = false;
      if (h > p / 2)
        mpz_submul_ui(residue[e].get_mpz_t(), modulus.get_mpz_t(), p - h);
      else
        mpz_addmul_ui(residue[e].get_mpz_t(), modulus.get_mpz_t(), h);
    }
    modulus *= BigInt(static_cast<unsigned long>(p));
    if (unchanged && used >= 2) {
      const RationalMatrix x = candidate_from([&](std::size_t e) { return Rational(residue[e]); });
      if (sys.verify(x)) return x;
    }
    // Rational reconstruction on a doubling schedule keeps its cost linear.
    if ((used & (used - 1)) != 0 && used % 8 != 0) continue;
    half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    std::vector<mpq_class> current(n * k);
    bool ok = true;
    for (std::size_t e = n * k; e-- > 0 && ok;) {
      shifted = residue[e];
      if (sgn(shifted) < 0) shifted += modulus;
      ok = reconstruct(shifted, modulus, bound, current[e]);
    }
    if (!ok) continue;
    const RationalMatrix x = candidate_from([&](std::size_t e) { return Rational(current[e]); });
    if (sys.verify(x)) return x;
  }
  return sys.fallback ? sys.fallback() : std::nullopt;
}

bool is_solution(const RationalMatrix& a, const RationalMatrix& b, const RationalMatrix& x) {
  if (!a.square() || a.rows() != b.rows() || x.rows() != a.cols() || x.cols() != b.cols()) return false;
  std::vector<BigInt> scale;
  return verify_solution(integer_rows(a, &b, scale), a.rows(), b.cols(), x);
}

std::optional<RationalMatrix> solve_modular(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve_modular: shape mismatch");
  const std::size_t n = a.rows(), k = b.cols();
  // Row scaling leaves X unchanged, so work with integer rows throughout.
  std::vector<BigInt> scale;
  const IntMatrix ab = integer_rows(a, &b, scale);
  ModularSystem sys;
  sys.n = n;
  sys.k = k;
  sys.reduce = [&](u64 p, std::vector<u64>& out) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n + k; ++c)
        if (sgn(ab[r][c]) != 0) out[r * (n + k) + c] = mpz_fdiv_ui(ab[r][c].get_mpz_t(), p);
    return true;
  };
  sys.verify = [&](const RationalMatrix& x) { return verify_solution(ab, n, k, x); };
  sys.fallback = [&] { return solve_exact(a, b); };
  return solve_modular(sys);
}

}  // namespace zhukit
