#include "zhukit/formal.hpp"

#include <algorithm>
#include <stdexcept>

#include "zhukit/errors.hpp"

namespace zhukit {

std::string_view to_string(IotaDirection d) {
  switch (d) {
    case IotaDirection::x_then_y: return "x_then_y";
    case IotaDirection::y_then_x: return "y_then_x";
    case IotaDirection::y_then_xy: return "y_then_xy";
  }
  return "?";
}

MonomialExpansion iota_expand(IotaDirection dir, const Rational& j, const Rational& k, long l, long order) {
  if (order < 0) throw std::invalid_argument("iota_expand: order must be >= 0");
  MonomialExpansion out{j, k, l, dir, order, {}};
  for (long i = 0; i < order; ++i) {
    switch (dir) {
      case IotaDirection::x_then_y: {
        const Rational c = binom(Rational(l), i) * Rational(sign_power(i));
        if (!c.is_zero()) out.terms.push_back({c, j + Rational(l - i), k + Rational(i)});
        break;
      }
      case IotaDirection::y_then_x: {
        const Rational c = binom(Rational(l), i) * Rational(sign_power(l - i));
        if (!c.is_zero()) out.terms.push_back({c, j + Rational(i), k + Rational(l - i)});
        break;
      }
      case IotaDirection::y_then_xy: {
        const Rational& c = binom(j, i);
        if (!c.is_zero()) out.terms.push_back({c, k + j - Rational(i), Rational(l + i)});
        break;
      }
    }
  }
  return out;
}

namespace {

bool in_lattice(const Rational& v, long T) { return (v * Rational(T)).is_integer(); }

// s with v in s/T + Z; v must lie in (1/T)Z.
long sector_of(const Rational& v, long T) {
  const BigInt scaled = (v * Rational(T)).numerator();
  BigInt s;
  mpz_fdiv_r_ui(s.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(T));
  return s.get_si();
}

}  // namespace

BiseriesWindow::BiseriesWindow(long T, Rational p_lo, Rational p_hi, Rational q_lo, Rational q_hi)
    : T_(T), p_lo_(std::move(p_lo)), p_hi_(std::move(p_hi)), q_lo_(std::move(q_lo)), q_hi_(std::move(q_hi)) {
  if (T < 1) throw std::invalid_argument("BiseriesWindow: T must be >= 1");
}

bool BiseriesWindow::contains(const Rational& p, const Rational& q) const {
  return p_lo_ <= p && p <= p_hi_ && q_lo_ <= q && q <= q_hi_ && in_lattice(p, T_) && in_lattice(q, T_);
}

FockVector BiseriesWindow::at(const Rational& p, const Rational& q) const {
  if (!contains(p, q))
    throw std::out_of_range("bi-series coefficient (" + p.to_string() + "," + q.to_string() + ") outside the window");
  const auto it = entries_.find({p, q});
  return it == entries_.end() ? FockVector{} : it->second;
}

void BiseriesWindow::set(const Rational& p, const Rational& q, FockVector v) {
  if (!contains(p, q))
    throw std::out_of_range("bi-series coefficient (" + p.to_string() + "," + q.to_string() + ") outside the window");
  if (v.is_zero())
    entries_.erase({p, q});
  else
    entries_[{p, q}] = std::move(v);
}

BiseriesWindow& BiseriesWindow::operator+=(const BiseriesWindow& o) {
  if (o.T_ != T_ || o.p_lo_ != p_lo_ || o.p_hi_ != p_hi_ || o.q_lo_ != q_lo_ || o.q_hi_ != q_hi_)
    throw std::invalid_argument("BiseriesWindow: adding series over different windows");
  for (const auto& [idx, v] : o.entries_) set(idx.first, idx.second, at(idx.first, idx.second) + v);
  return *this;
}

BiseriesWindow sector_component(const BiseriesWindow& X, long s, SeriesVariable var) {
  if (s < 0 || s >= X.T()) throw std::invalid_argument("sector_component: s out of range");
  BiseriesWindow out(X.T(), X.p_lo(), X.p_hi(), X.q_lo(), X.q_hi());
  for (const auto& [idx, v] : X.entries()) {
    const Rational& e = var == SeriesVariable::first ? idx.first : idx.second;
    if (sector_of(e, X.T()) == s) out.set(idx.first, idx.second, v);
  }
  return out;
}

RationalMatrix binomial_toeplitz(const Rational& j, std::size_t size) {
  RationalMatrix m(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c <= r; ++c) m(r, c) = binom(j, static_cast<long>(r - c));
  return m;
}

FockVector iterate(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b, const FockVector& w,
                   std::int64_t i, std::int64_t l) {
  return V.mode(V.mode(a, l, b), i, w);
}

namespace {

// a_i w vanishes for i > top_mode(a, w): its weight would be negative.
std::int64_t top_mode(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& w) {
  return std::max<long>(a.max_weight(), V.delta()) + std::max<long>(w.max_weight(), V.delta()) - V.delta() - 1;
}

// sum_i binom(l,i) (-1)^i (a_{l+j-i} b_{k+i} + (-1)^{l+1} b_{c-i} a_{j+i}) w, c = b_second.
FockVector single_mode_side(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                            const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l,
                            std::int64_t b_second) {
  // Term one vanishes once b_{k+i} w does; term two once a_{j+i} w does.
  const std::int64_t i_max = std::max(top_mode(V, b, w) - k, top_mode(V, a, w) - j);
  FockVector out;
  for (std::int64_t i = 0; i <= i_max; ++i) {
    const Rational& c = binom(Rational(l), i);
    if (c.is_zero()) {
      if (l >= 0) break;
      continue;
    }
    FockVector term = V.mode(a, l + j - i, V.mode(b, k + i, w));
    FockVector second = V.mode(b, b_second - i, V.mode(a, j + i, w));
    term.add_scaled(Rational(sign_power(l + 1)), second);
    out.add_scaled(c * Rational(sign_power(i)), term);
  }
  return out;
}

}  // namespace

IdentitySides borcherds_coeff_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                                    const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l) {
  IdentitySides out;
  // a_{l+i} b vanishes for l + i > top_mode(a, b).
  for (std::int64_t i = 0; l + i <= top_mode(V, a, b); ++i) {
    const Rational& c = binom(Rational(j), i);
    if (c.is_zero()) {
      if (j >= 0) break;
      continue;
    }
    out.lhs.add_scaled(c, iterate(V, a, b, w, j + k - i, l + i));
  }
  out.rhs = single_mode_side(V, a, b, w, j, k, l, l + k);
  return out;
}

bool borcherds_coeff_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                           const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l) {
  return borcherds_coeff_sides(V, a, b, w, j, k, l).holds();
}

std::int64_t product_bound(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("product_bound: a and b must be nonzero");
  std::int64_t L = top_mode(V, a, b);
  while (V.mode(a, L, b).is_zero()) --L;
  return L;
}

IdentitySides express_ysab_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                                 const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l,
                                 std::int64_t L) {
  for (std::int64_t i = L + 1; i <= top_mode(V, a, b); ++i)
    if (!V.mode(a, i, b).is_zero())
      throw PreconditionError("express_ysab: a_" + std::to_string(i) + " b != 0 although " + std::to_string(i) +
                              " > L = " + std::to_string(L));
  IdentitySides out;
  out.lhs = iterate(V, a, b, w, j + k, l);
  for (std::int64_t m = 0; m <= L - l; ++m) {
    const Rational& c = binom(Rational(-j), m);
    if (c.is_zero()) continue;
    // R(l+m) at k-m: the first term keeps a_{l+m+j-i} b_{k-m+i}, the second b_{l+k-i}.
    out.rhs.add_scaled(c, single_mode_side(V, a, b, w, j, k - m, l + m, l + k));
  }
  return out;
}

bool express_ysab_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& b,
                        const FockVector& w, std::int64_t j, std::int64_t k, std::int64_t l, std::int64_t L) {
  return express_ysab_sides(V, a, b, w, j, k, l, L).holds();
}

IdentitySides derivation_sides(const GradedVertexAlgebra& V, const FockVector& a, std::int64_t n,
                               const FockVector& w) {
  IdentitySides out;
  out.lhs = V.mode(V.mode(a, -2, V.vacuum()), n, w);
  out.rhs = V.mode(a, n - 1, w);
  out.rhs *= Rational(-n);
  return out;
}

bool derivation_check(const GradedVertexAlgebra& V, const FockVector& a, std::int64_t n, const FockVector& w) {
  return derivation_sides(V, a, n, w).holds();
}

IdentitySides ysonea_sides(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& w,
                           std::int64_t k, std::int64_t l) {
  return {iterate(V, V.vacuum(), a, w, k, l), l == -1 ? V.mode(a, k, w) : FockVector{}};
}

bool ysonea_check(const GradedVertexAlgebra& V, const FockVector& a, const FockVector& w, std::int64_t k,
                  std::int64_t l) {
  const IdentitySides direct = ysonea_sides(V, a, w, k, l);
  // 1_i a = 0 for i >= 0, so the single-mode expression applies with L = -1.
  const IdentitySides expressed = express_ysab_sides(V, V.vacuum(), a, w, 0, k, l, -1);
  return direct.holds() && expressed.rhs == direct.rhs;
}

}  // namespace zhukit
