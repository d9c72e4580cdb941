#include "zhukit/vertex.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "zhukit/matrix.hpp"

namespace zhukit {

namespace {

long homogeneous_weight(const FockVector& v, const char* what) {
  const auto w = v.weight();
  if (!w) throw PreconditionError(std::string(what) + " must be homogeneous");
  return *w;
}

}  // namespace

FockVector substitute(const GradedVertexAlgebra& V, const LaurentPoly& P, const FockVector& a,
                      const FockVector& b) {
  if (P.is_zero() || a.is_zero() || b.is_zero()) return {};
  const long wa = homogeneous_weight(a, "substitute: a");
  const long wb = homogeneous_weight(b, "substitute: b");
  FockVector out;
  for (const auto& [j, c] : P) {
    if (wa + wb - j - 1 < V.delta()) break;  // exponents ascend, weights descend
    out.add_scaled(c, V.mode(a, j, b));
  }
  return out;
}

FockVector hat_mu(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& b,
                  long s, Exponent i) {
  FockVector out;
  for (const auto& [wa, ca] : a.components())
    for (const auto& [wb, cb] : b.components()) out += substitute(V, mu(idx, wa, wb, s, i), ca, cb);
  return out;
}

FockVector star(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& b) {
  if (!idx.p) throw std::invalid_argument("star: the index needs a p grade");
  FockVector out;
  for (const auto& [wa, ca] : a.components())
    for (const auto& [wb, cb] : b.components()) out += substitute(V, pi(idx, wa, wb), ca, cb);
  return out;
}

FockVector o_map(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a, const FockVector& w) {
  if (a.is_zero()) return {};
  const long wa = homogeneous_weight(a, "o_map: a");
  const Rational index = Rational(wa - 1) + idx.m.value(idx.T) - idx.n.value(idx.T);
  if (!index.is_integer())
    throw PreconditionError("o_map: mode index " + index.to_string() + " is not an integer on V");
  return V.mode(a, index.to_long(), w);
}

FockVector residue_y(const GradedVertexAlgebra& V, const Rational& c, Exponent j, const FockVector& b,
                     const FockVector& a) {
  FockVector out;
  for (const auto& [wb, cb] : b.components())
    for (const auto& [wa, ca] : a.components()) {
      const auto& row = binom_row(c, std::max<long>(0, wa + wb - j - 1 - V.delta()));
      for (long k = 0; wa + wb - (j + k) - 1 >= V.delta(); ++k)
        out.add_scaled(row[static_cast<std::size_t>(k)], V.mode(cb, j + k, ca));
    }
  return out;
}

FockVector hat_mu_residue(const GradedVertexAlgebra& V, const ZhuIndex& idx, const FockVector& a,
                          const FockVector& b, long r, const Rational& c) {
  FockVector out;
  for (const auto& [wa, ca] : a.components())
    for (const auto& [wb, cb] : b.components()) {
      const long top = wa + wb - idx.delta - 1;  // hat_mu(r, a, b, k) = 0 for k > top
      if (top < 0) continue;
      const auto& row = binom_row(c, top);
      LaurentPoly P;
      for (long k = 0; k <= top; ++k) P.add_scaled(row[static_cast<std::size_t>(k)], mu(idx, wa, wb, r, k));
      out += substitute(V, P, ca, cb);
    }
  return out;
}

std::vector<OvGenerator> o0_generators(const GradedVertexAlgebra& V, const ZhuIndex& idx, long max_basis_weight) {
  std::vector<OvGenerator> out;
  const Rational shift = idx.m.value(idx.T) - idx.n.value(idx.T);
  for (long w = V.delta(); w <= max_basis_weight; ++w)
    for (const auto& p : V.weight_basis(w)) {
      const FockVector a = FockVector::basis(p);
      FockVector g = V.mode(a, -2, V.vacuum());
      g.add_scaled(Rational(w) + shift, a);
      if (!g.is_zero()) out.push_back({"O0[" + partition_text(p) + "]", std::move(g)});
    }
  return out;
}

std::vector<OvGenerator> o_generators(const GradedVertexAlgebra& V, const ZhuIndex& idx, long W, long J) {
  std::vector<OvGenerator> out = o0_generators(V, idx, W - 1);
  for (long wa = V.delta(); wa <= W; ++wa)
    for (long wb = V.delta(); wb <= W; ++wb) {
      std::vector<std::pair<std::size_t, LaurentPoly>> polys;
      const auto gens = intersection_generators(idx, wa, wb, J);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const LaurentPoly& P = gens[k];
        if (P.is_zero() || wa + wb - P.min_exponent() - 1 > W) continue;
        polys.emplace_back(k, P);
      }
      if (polys.empty()) continue;
      for (const auto& pa : V.weight_basis(wa))
        for (const auto& pb : V.weight_basis(wb)) {
          const FockVector a = FockVector::basis(pa);
          const FockVector b = FockVector::basis(pb);
          for (const auto& [k, P] : polys) {
            FockVector g = substitute(V, P, a, b);
            if (g.is_zero()) continue;
            out.push_back({"O1[" + partition_text(pa) + "," + partition_text(pb) + ",#" + std::to_string(k) + "]",
                           std::move(g)});
          }
        }
    }
  return out;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non_member";
    case Membership::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string MembershipResult::describe(std::size_t max_terms) const {
  std::string out = std::string(to_string(status)) + " (W=" + std::to_string(W) + ",J=" + std::to_string(J) +
                    ",generators=" + std::to_string(generators) + ")";
  if (status != Membership::member) return out;
  out += " witness:";
  for (std::size_t k = 0; k < witness.size() && k < max_terms; ++k)
    out += " " + witness[k].second.to_string() + "*" + witness[k].first;
  if (witness.size() > max_terms) out += " ... (" + std::to_string(witness.size()) + " terms)";
  return out;
}

namespace {

using Coords = std::map<Partition, std::size_t>;

Coords coordinates(const GradedVertexAlgebra& V, long top) {
  Coords out;
  for (long w = V.delta(); w <= top; ++w)
    for (const auto& p : V.weight_basis(w)) out.emplace(p, out.size());
  return out;
}

bool verify_witness(const std::vector<OvGenerator>& gens, const std::vector<std::pair<std::size_t, Rational>>& combo,
                    const FockVector& v) {
  FockVector sum;
  for (const auto& [k, c] : combo) sum.add_scaled(c, gens[k].vector);
  return sum == v;
}

MembershipResult finish(const std::vector<OvGenerator>& gens, std::vector<std::pair<std::size_t, Rational>> combo,
                        long W, long J) {
  MembershipResult out;
  out.status = Membership::member;
  out.W = W;
  out.J = J;
  out.generators = gens.size();
  for (auto& [k, c] : combo)
    if (!c.is_zero()) out.witness.emplace_back(gens[k].label, std::move(c));
  return out;
}

// Modular arithmetic below 2^31, so products fit in 64 bits.
constexpr std::uint64_t kSpanPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (a %= p; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

std::optional<std::uint64_t> to_mod(const Rational& x, std::uint64_t p) {
  const std::uint64_t den = mpz_fdiv_ui(x.raw().get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(x.raw().get_num_mpz_t(), p);
  return num * pow_mod(den, p - 2, p) % p;
}

std::optional<std::vector<std::uint64_t>> dense_mod(const FockVector& v, const Coords& coords, std::uint64_t p) {
  std::vector<std::uint64_t> out(coords.size());
  for (const auto& [part, c] : v) {
    const auto r = to_mod(c, p);
    if (!r) return std::nullopt;
    out[coords.at(part)] = *r;
  }
  return out;
}

// Finds sum c_k gens[k] == v: a pivot set of generators modulo p, then the
// square pivot system solved over Q and verified on every coordinate.
std::optional<std::vector<std::pair<std::size_t, Rational>>> span_combination(const std::vector<OvGenerator>& gens,
                                                                              const FockVector& v,
                                                                              const Coords& coords) {
  if (v.is_zero()) return std::vector<std::pair<std::size_t, Rational>>{};
  const std::size_t dim = coords.size();
  for (const std::uint64_t p : kSpanPrimes) {
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> pivot_gen;
    auto eliminate = [&](std::vector<std::uint64_t>& vec) {
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::uint64_t c = vec[pivot_col[k]];
        if (c == 0) continue;
        const auto& row = rows[k];
        for (std::size_t t = pivot_col[k]; t < dim; ++t)
          if (row[t] != 0) vec[t] = (vec[t] + (p - c) * row[t]) % p;
      }
    };
    bool usable = true;
    for (std::size_t g = 0; g < gens.size() && rows.size() < dim; ++g) {
      auto vec = dense_mod(gens[g].vector, coords, p);
      if (!vec) {
        usable = false;
        break;
      }
      eliminate(*vec);
      const auto lead = std::find_if(vec->begin(), vec->end(), [](std::uint64_t x) { return x != 0; });
      if (lead == vec->end()) continue;
      const std::size_t col = static_cast<std::size_t>(lead - vec->begin());
      const std::uint64_t inv = pow_mod(*lead, p - 2, p);
      for (auto& x : *vec) x = x * inv % p;
      rows.push_back(std::move(*vec));
      pivot_col.push_back(col);
      pivot_gen.push_back(g);
    }
    if (!usable) continue;
    auto target = dense_mod(v, coords, p);
    if (!target) continue;
    eliminate(*target);
    if (std::any_of(target->begin(), target->end(), [](std::uint64_t x) { return x != 0; })) continue;

    const std::size_t r = rows.size();
    RationalMatrix a(r, r);
    RationalMatrix rhs(r, 1);
    std::vector<std::size_t> row_of(dim, r);
    for (std::size_t i = 0; i < r; ++i) row_of[pivot_col[i]] = i;
    for (std::size_t k = 0; k < r; ++k)
      for (const auto& [part, c] : gens[pivot_gen[k]].vector)
        if (const std::size_t i = row_of[coords.at(part)]; i < r) a(i, k) = c;
    for (const auto& [part, c] : v)
      if (const std::size_t i = row_of[coords.at(part)]; i < r) rhs(i, 0) = c;
    const auto x = solve_modular(a, rhs);
    if (!x) continue;
    std::vector<std::pair<std::size_t, Rational>> combo;
    for (std::size_t k = 0; k < r; ++k)
      if (!(*x)(k, 0).is_zero()) combo.emplace_back(pivot_gen[k], (*x)(k, 0));
    if (verify_witness(gens, combo, v)) return combo;
  }
  return std::nullopt;
}

}  // namespace

MembershipResult member_o0(const GradedVertexAlgebra& V, const FockVector& v, const ZhuIndex& idx) {
  const long top = std::max(v.max_weight(), V.delta());
  const auto gens = o0_generators(V, idx, top);
  const Coords coords = coordinates(V, top + 1);
  RationalMatrix m(coords.size(), gens.size() + 1);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (const auto& [part, c] : gens[k].vector) m(coords.at(part), k) = c;
  for (const auto& [part, c] : v) m(coords.at(part), gens.size()) = c;
  // v is in the span iff its column is free; the kernel vector for that
  // column reads M x + v = 0.
  for (const auto& x : nullspace(m)) {
    if (x.back() != Rational(1)) continue;
    std::vector<std::pair<std::size_t, Rational>> combo;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (!x[k].is_zero()) combo.emplace_back(k, -x[k]);
    if (!verify_witness(gens, combo, v)) throw std::logic_error("member_o0: witness failed verification");
    return finish(gens, std::move(combo), top, 0);
  }
  MembershipResult out;
  out.status = Membership::non_member;
  out.W = top;
  out.generators = gens.size();
  return out;
}

MembershipResult member_ov(const GradedVertexAlgebra& V, const FockVector& v, const ZhuIndex& idx, long W,
                           long J) {
  if (v.max_weight() > W) throw PreconditionError("member_ov: vector has weight above W");
  const auto gens = o_generators(V, idx, W, J);
  const Coords coords = coordinates(V, W);
  if (auto combo = span_combination(gens, v, coords)) return finish(gens, std::move(*combo), W, J);
  MembershipResult out;
  out.W = W;
  out.J = J;
  out.generators = gens.size();
  return out;
}

}  // namespace zhukit
