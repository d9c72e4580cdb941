#include "zhukit/lemmas.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zhukit/binomial_matrices.hpp"

namespace zhukit {

namespace {

using Witness = std::optional<std::string>;

Grade grade_of(const Rational& v, long T) {
  const Rational scaled = v * Rational(T);
  if (v.sign() < 0 || !scaled.is_integer()) throw std::invalid_argument("grade_of: not in (1/T)N");
  const long k = scaled.to_long();
  return Grade{k / T, k % T};
}

std::string describe(const ReducedForm& r) {
  return "residue " + r.canonical.to_text() + " mod O(" + std::to_string(r.spec.N) + "," + r.spec.Q.to_string() +
         "," + std::to_string(r.spec.q) + ")";
}

// Emits one record for the grid point: pass, or fail with the first witness.
void record(Report& out, const std::string& check, const std::string& params, const Witness& w) {
  out.add(check, params, w ? Status::fail : Status::pass, w.value_or(""));
}

template <class Body>
Witness over_weights(const ZhuIndex& idx, const LemmaGrid& g, Body body) {
  for (long a = idx.delta; a <= g.max_weight; ++a)
    for (long b = idx.delta; b <= g.max_weight; ++b)
      if (auto w = body(a, b)) {
        std::ostringstream os;
        os << "alpha=" << a << ",beta=" << b << ": " << *w;
        return os.str();
      }
  return std::nullopt;
}

// First sector space that does not contain f.
Witness not_in_intersection(const LaurentPoly& f, const ZhuIndex& idx, long alpha, long beta) {
  for (long s = 0; s < idx.T; ++s) {
    const ReducedForm r = reduce_mod_o(f, zhu_ospace_spec(idx, s, alpha, beta));
    if (!r.canonical.is_zero()) return "s=" + std::to_string(s) + " " + describe(r);
  }
  return std::nullopt;
}

template <class Fn>
void for_nm(const LemmaGrid& g, Fn fn) {
  for (long T : g.Ts)
    for (long delta : g.deltas)
      for (const Grade& n : g.grades(T))
        for (const Grade& m : g.grades(T)) fn(ZhuIndex{T, delta, n, m, std::nullopt});
}

template <class Fn>
void for_npm(const LemmaGrid& g, Fn fn) {
  for_nm(g, [&](ZhuIndex idx) {
    for (const Grade& p : g.grades(idx.T)) {
      idx.p = p;
      fn(idx);
    }
  });
}

Report check_descend(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    const Witness w = [&]() -> Witness {
      for (const Grade& n2 : g.grades(idx.T)) {
        if (n2.value(idx.T) > idx.n.value(idx.T)) continue;
        for (const Grade& m2 : g.grades(idx.T)) {
          if (m2.value(idx.T) > idx.m.value(idx.T)) continue;
          const ZhuIndex lower{idx.T, idx.delta, n2, m2, std::nullopt};
          auto found = over_weights(idx, g, [&](long a, long b) -> Witness {
            for (long s = 0; s < idx.T; ++s) {
              const OSpaceSpec target = zhu_ospace_spec(lower, s, a, b);
              for (Exponent j = 0; j >= -g.depth; --j) {
                const ReducedForm r = reduce_mod_o(f_generator(idx, s, a, b, j), target);
                if (!r.canonical.is_zero())
                  return "s=" + std::to_string(s) + ",j=" + std::to_string(j) + " " + describe(r);
              }
            }
            return std::nullopt;
          });
          if (found) return "to " + lower.label() + " " + *found;
        }
      }
      return std::nullopt;
    }();
    record(out, "descend", idx.label(), w);
  });
  return out;
}

Report check_phi_ab(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    const Rational mn = idx.m.value(idx.T) - idx.n.value(idx.T);
    const Witness w = over_weights(idx, g, [&](long a, long b) -> Witness {
      const Exponent N = a + b - 1 - idx.delta;
      const Rational gamma = Rational(a + b - 2) + mn;
      for (long s = 0; s < idx.T; ++s) {
        const long sv = s_vee(idx, s);
        const OSpaceSpec ab = zhu_ospace_spec(idx, s, a, b);
        const OSpaceSpec ba = zhu_ospace_spec(idx, sv, b, a);
        for (Exponent j = 0; j >= -g.depth; --j) {
          const ReducedForm fwd = reduce_mod_o(phi(N, gamma, o_generator(ba, j)), ab);
          if (!fwd.canonical.is_zero())
            return "s=" + std::to_string(s) + ",j=" + std::to_string(j) + " forward " + describe(fwd);
          const ReducedForm back = reduce_mod_o(phi(N, gamma, o_generator(ab, j)), ba);
          if (!back.canonical.is_zero())
            return "s=" + std::to_string(s) + ",j=" + std::to_string(j) + " reverse " + describe(back);
        }
      }
      return std::nullopt;
    });
    record(out, "phi_ab", idx.label(), w);
  });
  return out;
}

Report check_unit_qs(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    const Witness w = over_weights(idx, g, [&](long a, long b) -> Witness {
      const MuWindow win = mu_window(idx, a, b);
      for (long r = 0; r < idx.T; ++r)
        for (Exponent i = win.lo - 2; i <= win.hi + 2; ++i) {
          const LaurentPoly u = mu(idx, a, b, r, i);
          const std::string at = "r=" + std::to_string(r) + ",i=" + std::to_string(i);
          if (!u.is_zero() && (u.min_exponent() < win.lo || u.max_exponent() > win.hi))
            return at + " support outside [" + std::to_string(win.lo) + "," + std::to_string(win.hi) + "]";
          for (long s = 0; s < idx.T; ++s) {
            LaurentPoly diff = u;
            if (s == r) diff.add_term(i, Rational(-1));
            if (!win.degenerate()) {
              const ReducedForm own = reduce_mod_o(diff, win.modulus(s));
              if (!own.canonical.is_zero()) return at + ",s=" + std::to_string(s) + " defining " + describe(own);
            }
            const ReducedForm sec = reduce_mod_o(diff, zhu_ospace_spec(idx, s, a, b));
            if (!sec.canonical.is_zero()) return at + ",s=" + std::to_string(s) + " sector " + describe(sec);
          }
        }
      return std::nullopt;
    });
    record(out, "unit_qs", idx.label(), w);
  });
  return out;
}

Report check_sum_e_s(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    const Witness w = over_weights(idx, g, [&](long a, long b) -> Witness {
      const MuWindow win = mu_window(idx, a, b);
      const auto specs = sector_specs(idx, a, b);
      for (Exponent i = win.lo - 2; i <= win.hi + 2; ++i) {
        LaurentPoly total = LaurentPoly::monomial(i, Rational(-1));
        for (long s = 0; s < idx.T; ++s) total += mu(idx, a, b, s, i);
        const auto parts = reduce_mod_intersection(total, specs);
        for (std::size_t s = 0; s < parts.size(); ++s)
          if (!parts[s].canonical.is_zero())
            return "i=" + std::to_string(i) + ",s=" + std::to_string(s) + " " + describe(parts[s]);
      }
      return std::nullopt;
    });
    record(out, "sum_e_s", idx.label(), w);
  });
  return out;
}

Report check_n_neq_p_zero(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    Witness w;
    if (idx.delta <= 0) {
      for (long b = idx.delta; b <= g.max_weight && !w; ++b) {
        const MuWindow win = mu_window(idx, 0, b);
        for (long r = 0; r < idx.T && !w; ++r)
          for (Exponent j = win.lo - 2; j <= win.hi + 2 && !w; ++j) {
            const Rational c = mu(idx, 0, b, r, j).coeff(-1);
            const Rational expected = (r == 0 && j == -1) ? Rational(1) : Rational(0);
            if (c != expected)
              w = "beta=" + std::to_string(b) + ",r=" + std::to_string(r) + ",j=" + std::to_string(j) +
                  ": coefficient of z^-1 is " + c.to_string() + ", expected " + expected.to_string();
          }
      }
    }
    record(out, "n_neq_p_zero", idx.label(), w);
  });
  return out;
}

Report check_one_poly(const LemmaGrid& g) {
  Report out;
  for_npm(g, [&](const ZhuIndex& idx) {
    Witness w;
    const Rational expected = idx.n == *idx.p ? Rational(1) : Rational(0);
    for (long a = idx.delta; a <= g.max_weight && !w; ++a) {
      const Rational c = pi(idx, 0, a).coeff(-1);
      if (c != expected)
        w = "alpha=" + std::to_string(a) + ": coefficient of z^-1 is " + c.to_string() + ", expected " +
            expected.to_string();
    }
    record(out, "one_poly", idx.label(), w);
  });
  return out;
}

Report check_comm_x(const LemmaGrid& g) {
  Report out;
  for_npm(g, [&](const ZhuIndex& idx) {
    const long T = idx.T;
    const Rational n = idx.n.value(T), m = idx.m.value(T), p = idx.p->value(T);
    if (p > m + n) {
      out.add("comm_x", idx.label(), Status::skipped, "p > m+n");
      return;
    }
    ZhuIndex swapped = idx;
    swapped.p = grade_of(m + n - p, T);
    const long r = residue_r(idx.p->i, idx.n.i, T);
    const Witness w = over_weights(idx, g, [&](long a, long b) -> Witness {
      const LaurentPoly first = pi(idx, a, b);
      const LaurentPoly second = phi(a + b - 1 - idx.delta, Rational(a + b - 2) + m - n, pi(swapped, b, a));
      const LaurentFamily family = [&](Exponent k) { return mu(idx, a, b, r, k); };
      const LaurentPoly third = residue_kernel(Rational(a - 1) + p - n, 0, family, a + b - idx.delta - 1);
      return not_in_intersection(first - second - third, idx, a, b);
    });
    record(out, "comm_x", idx.label(), w);
  });
  return out;
}

Report check_multi_descend(const LemmaGrid& g) {
  Report out;
  for_npm(g, [&](const ZhuIndex& idx) {
    const long T = idx.T;
    const Rational n = idx.n.value(T), m = idx.m.value(T), p = idx.p->value(T);
    Witness w;
    for (const Grade& lg : g.grades(T)) {
      const Rational l = lg.value(T);
      if (l.is_zero() || l > n || l > m || l > p) continue;
      const ZhuIndex lower{T, idx.delta, grade_of(n - l, T), grade_of(m - l, T), grade_of(p - l, T)};
      w = over_weights(idx, g, [&](long a, long b) -> Witness {
        return not_in_intersection(pi(idx, a, b) - pi(lower, a, b), lower, a, b);
      });
      if (w) {
        w = "l=" + l.to_string() + " " + *w;
        break;
      }
    }
    record(out, "multi_descend", idx.label(), w);
  });
  return out;
}

Report check_mul_tprime(const LemmaGrid& g) {
  Report out;
  for_npm(g, [&](const ZhuIndex& idx) {
    Witness w;
    for (long d : g.tprime_factors) {
      auto up = [d](const Grade& x) { return Grade{x.l, x.i * d}; };
      const ZhuIndex fine{idx.T * d, idx.delta, up(idx.n), up(idx.m), up(*idx.p)};
      w = over_weights(idx, g, [&](long a, long b) -> Witness {
        return not_in_intersection(pi(fine, a, b) - pi(idx, a, b), idx, a, b);
      });
      if (w) {
        w = "T'=" + std::to_string(idx.T * d) + " " + *w;
        break;
      }
    }
    record(out, "mul_Tprime", idx.label(), w);
  });
  return out;
}

// Uniform integers from raw engine output, so samples do not depend on the
// standard library's distribution algorithms.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational draw_rational(std::mt19937_64& rng, long max_num, long max_den) {
  return Rational(draw(rng, -max_num, max_num), draw(rng, 1, max_den));
}

// det A(xs; b) against the closed-form product at random rational points.
Report check_det_identity(const LemmaGrid& g) {
  Report out;
  std::mt19937_64 rng(g.seed);
  for (long t = 1; t <= g.det_max; ++t)
    for (long b = 1; b <= g.det_max; ++b) {
      Witness w;
      for (long k = 0; k < g.det_points; ++k) {
        std::vector<Rational> xs;
        for (long s = 0; s < t; ++s) xs.push_back(draw_rational(rng, 20, 7));
        const Rational det = det_exact(build_A(xs, b));
        const Rational closed = det_closed_form(xs, b);
        if (det != closed && !w) {
          std::string at;
          for (const Rational& x : xs) at += (at.empty() ? "" : ",") + x.to_string();
          w = "xs=(" + at + "): det " + det.to_string() + " != product " + closed.to_string();
        }
      }
      record(out, "det_identity", "t=" + std::to_string(t) + ",b=" + std::to_string(b), w);
    }
  return out;
}

// Gamma of every mu system is nonsingular and matches the closed form at -Q.
Report check_gamma_nonsingular(const LemmaGrid& g) {
  Report out;
  for_nm(g, [&](const ZhuIndex& idx) {
    const Witness w = over_weights(idx, g, [&](long a, long b) -> Witness {
      const MuWindow win = mu_window(idx, a, b);
      if (win.degenerate()) return std::nullopt;
      const Rational det = det_exact(build_Gamma(idx.T, win.N, win.q, win.Qs));
      std::vector<Rational> xs;
      for (const Rational& Q : win.Qs) xs.push_back(-Q);
      if (det.is_zero()) return std::string("det Gamma = 0");
      const Rational closed = det_closed_form(xs, win.N - win.q);
      if (det != closed) return "det Gamma " + det.to_string() + " != product " + closed.to_string();
      return std::nullopt;
    });
    record(out, "gamma_nonsingular", idx.label(), w);
  });
  return out;
}

// phi_{N,gamma} is an involution and maps O(N,Q,q) onto O(N,gamma-Q-q,q):
// random polynomials for the first, and generators to depth J plus random
// elements of the space for the second.
Report check_phi_involution(const LemmaGrid& g) {
  Report out;
  std::mt19937_64 rng(g.seed + 1);
  const std::vector<Exponent> Ns{-3, 0, 2};
  const std::vector<Rational> gammas{Rational(0), Rational(1, 2), Rational(-2, 3), Rational(3)};
  const std::vector<Rational> Qs{Rational(0), Rational(1, 3), Rational(-5, 2), Rational(2)};
  for (Exponent N : Ns)
    for (const Rational& gamma : gammas) {
      Witness w;
      const auto image_fails = [&](const LaurentPoly& f, const OSpaceSpec& to) {
        return !reduce_mod_o(phi(N, gamma, f), to).canonical.is_zero();
      };
      for (const Rational& Q : Qs)
        for (Exponent q = N - 4; q < N && !w; ++q) {
          const OSpaceSpec from{N, Q, q};
          const OSpaceSpec to{N, gamma - Q - Rational(q), q};
          for (Exponent j = 0; j >= -g.depth && !w; --j) {
            if (image_fails(o_generator(from, j), to))
              w = "generator j=" + std::to_string(j) + " of O(" + std::to_string(N) + "," + Q.to_string() + "," +
                  std::to_string(q) + ") not mapped into the image space";
            else if (image_fails(o_generator(to, j), from))
              w = "generator j=" + std::to_string(j) + " of the image space not mapped back";
          }
        }
      for (long k = 0; k < g.phi_samples && !w; ++k) {
        LaurentPoly f;
        const long terms = draw(rng, 1, 6);
        for (long t = 0; t < terms; ++t) f.add_term(draw(rng, N - 8, N + 3), draw_rational(rng, 9, 6));
        if (phi(N, gamma, phi(N, gamma, f)) != f) {
          w = "phi^2 != id on " + f.to_text();
          break;
        }
        // A random element of O(N,Q,q): generators and monomials above N.
        const Rational& Q = Qs[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(Qs.size()) - 1))];
        const Exponent q = N - draw(rng, 1, 4);
        const OSpaceSpec from{N, Q, q};
        LaurentPoly elem = LaurentPoly::monomial(N + draw(rng, 1, 3), draw_rational(rng, 9, 6));
        for (long t = 0; t < 3; ++t) elem.add_scaled(draw_rational(rng, 9, 6), o_generator(from, -draw(rng, 0, 8)));
        if (image_fails(elem, OSpaceSpec{N, gamma - Q - Rational(q), q}))
          w = "element " + elem.to_text() + " of O(" + std::to_string(N) + "," + Q.to_string() + "," +
              std::to_string(q) + ") not mapped into the image space";
      }
      record(out, "phi_involution", "N=" + std::to_string(N) + ",gamma=" + gamma.to_string(), w);
    }
  return out;
}

Report check_svee(const LemmaGrid&) {
  Report out;
  for (long T = 1; T <= 6; ++T) {
    Witness w;
    for (long i1 = 0; i1 < T && !w; ++i1)
      for (long i3 = 0; i3 < T && !w; ++i3)
        for (long s = 0; s < T && !w; ++s)
          if (!svee_identities_hold(T, i1, i3, s))
            w = "i1=" + std::to_string(i1) + ",i3=" + std::to_string(i3) + ",s=" + std::to_string(s);
    record(out, "svee_identities", "T=" + std::to_string(T), w);
  }
  return out;
}

}  // namespace

LemmaGrid LemmaGrid::preset(std::string_view name) {
  LemmaGrid g;
  if (name == "default") return g;
  if (name == "small") {
    g.Ts = {1, 2};
    g.max_l = 1;
    g.max_weight = 2;
    g.det_max = 2;
    g.det_points = 5;
    g.phi_samples = 20;
    return g;
  }
  throw std::invalid_argument("unknown grid preset '" + std::string(name) + "'");
}

std::vector<Grade> LemmaGrid::grades(long T) const {
  std::vector<Grade> out;
  for (long l = 0; l <= max_l; ++l)
    for (long i = 0; i < T; ++i) out.push_back(Grade{l, i});
  return out;
}

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{
      "det_identity",  "gamma_nonsingular", "phi_involution", "svee_identities", "descend",      "phi_ab",
      "unit_qs",       "sum_e_s",           "n_neq_p_zero",   "one_poly",        "comm_x",       "multi_descend",
      "mul_Tprime"};
  return names;
}

Report verify_lemma(std::string_view name, const LemmaGrid& grid) {
  if (name == "det_identity") return check_det_identity(grid);
  if (name == "gamma_nonsingular") return check_gamma_nonsingular(grid);
  if (name == "phi_involution") return check_phi_involution(grid);
  if (name == "svee_identities") return check_svee(grid);
  if (name == "descend") return check_descend(grid);
  if (name == "phi_ab") return check_phi_ab(grid);
  if (name == "unit_qs") return check_unit_qs(grid);
  if (name == "sum_e_s") return check_sum_e_s(grid);
  if (name == "n_neq_p_zero") return check_n_neq_p_zero(grid);
  if (name == "one_poly") return check_one_poly(grid);
  if (name == "comm_x") return check_comm_x(grid);
  if (name == "multi_descend") return check_multi_descend(grid);
  if (name == "mul_Tprime") return check_mul_tprime(grid);
  throw std::invalid_argument("unknown lemma '" + std::string(name) + "'");
}

bool svee_identities_hold(long T, long i1, long i3, long s) {
  const long sv = residue_r(i1 - i3, s, T);
  const auto d = [](bool b) { return b ? 1L : 0L; };
  const Rational lhs = Rational(-s - sv + i1 - i3, T) + Rational(d(T <= sv + i3));
  const bool first = lhs == Rational(d(s <= i1) - 1);
  const bool second = d(sv <= i1) + d(T <= sv + i3) == d(s <= i1) + d(T <= s + i3);
  return first && second;
}

}  // namespace zhukit
