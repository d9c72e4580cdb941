#include "zhukit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "zhukit/binomial_matrices.hpp"
#include "zhukit/errors.hpp"
#include "zhukit/formal.hpp"
#include "zhukit/lemmas.hpp"
#include "zhukit/ospace.hpp"
#include "zhukit/vertex.hpp"
#include "zhukit/zhu.hpp"

namespace zhukit {

using Json = nlohmann::ordered_json;

namespace {

// Bad flag values; reported with the flag name and exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Json rational_json(const Rational& r) { return r.to_fraction_string(); }

Json laurent_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p) out.push_back(Json::array({e, c.to_fraction_string()}));
  return out;
}

Json fock_json(const FockVector& v) {
  Json out = Json::array();
  for (const auto& [part, c] : v) out.push_back(Json::array({Json(part), c.to_fraction_string()}));
  return out;
}

Json spec_json(const OSpaceSpec& s) { return Json{{"N", s.N}, {"Q", rational_json(s.Q)}, {"q", s.q}}; }

Json index_json(const ZhuIndex& idx) {
  Json out{{"T", idx.T},
           {"delta", idx.delta},
           {"n", rational_json(idx.n.value(idx.T))},
           {"m", rational_json(idx.m.value(idx.T))}};
  if (idx.p) out["p"] = rational_json(idx.p->value(idx.T));
  return out;
}

enum class Format { json, csv };

// RFC 4180 quoting.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct Timed {
  std::string check;
  double seconds;
};

int report_exit(const Report& r) { return r.ok() ? exit_pass : exit_failure; }

void emit_report(std::ostream& out, std::ostream& err, Format format, const std::string& command,
                 const std::string& grid, const Report& report, const std::vector<Timed>& timing, bool with_timing) {
  if (format == Format::csv) {
    out << "check,params,status,witness\n";
    for (const auto& r : report.results)
      out << csv_field(r.check) << ',' << csv_field(r.params) << ',' << to_string(r.status) << ','
          << csv_field(r.witness) << '\n';
    if (with_timing)
      for (const auto& t : timing) err << "timing " << t.check << ' ' << t.seconds << "s\n";
    return;
  }
  Json summary{{"total", report.results.size()},
               {"pass", report.count(Status::pass)},
               {"fail", report.count(Status::fail)},
               {"skipped", report.count(Status::skipped)},
               {"inconclusive", report.count(Status::inconclusive)},
               {"ok", report.ok()}};
  Json results = Json::array();
  for (const auto& r : report.results)
    results.push_back(
        Json{{"check", r.check}, {"params", r.params}, {"status", std::string(to_string(r.status))}, {"witness", r.witness}});
  Json doc{{"command", command}, {"grid", grid}, {"summary", summary}};
  if (with_timing) {
    Json t = Json::array();
    for (const auto& x : timing) t.push_back(Json{{"check", x.check}, {"seconds", x.seconds}});
    doc["timing"] = t;
  }
  doc["results"] = results;
  out << doc.dump(2) << '\n';
}

void emit_value(std::ostream& out, Format format, const Json& doc) {
  if (format == Format::json) {
    out << doc.dump(2) << '\n';
    return;
  }
  // Values are flattened to key,value rows.
  out << "key,value\n";
  for (const auto& [k, v] : doc.items()) out << csv_field(k) << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

// Zhu index flags shared by several verbs.
struct IndexFlags {
  long T = 1;
  long delta = 0;
  std::string n = "0", m = "0", p;

  void add(CLI::App* cmd, bool with_p) {
    cmd->add_option("--T", T, "positive integer T")->capture_default_str();
    cmd->add_option("--delta", delta, "grading floor Delta <= 0")->capture_default_str();
    cmd->add_option("--n", n, "grade n as l+i/T or num/den")->capture_default_str();
    cmd->add_option("--m", m, "grade m as l+i/T or num/den")->capture_default_str();
    if (with_p) cmd->add_option("--p", p, "grade p as l+i/T or num/den")->required();
  }

  ZhuIndex build() const {
    if (T < 1) throw UsageError("--T: must be >= 1");
    ZhuIndex idx;
    idx.T = T;
    idx.delta = delta;
    auto grade = [&](const std::string& flag, const std::string& text) {
      try {
        return ZhuIndex::parse_grade(text, T);
      } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
      }
    };
    idx.n = grade("--n", n);
    idx.m = grade("--m", m);
    if (!p.empty()) idx.p = grade("--p", p);
    try {
      idx.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return idx;
  }
};

LaurentPoly parse_poly_flag(const std::string& flag, const std::string& text) {
  try {
    if (!text.empty() && text.front() == '[') return laurent_from_json(text);
    return LaurentPoly::parse_text(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

FockVector parse_fock_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_fock(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

long depth_from_env(long fallback) {
  const char* env = std::getenv("ZHUKIT_DEPTH");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string text(env);
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) || text.size() > 6)
    throw UsageError("ZHUKIT_DEPTH: expected a non-negative integer, got '" + text + "'");
  return std::stol(text);
}

template <class Names, class Run>
Report run_named(const std::string& what, const std::string& name, const Names& names, Run run,
                 std::vector<Timed>& timing) {
  Report out;
  std::vector<std::string> chosen;
  if (name == "all")
    chosen.assign(names.begin(), names.end());
  else if (std::find(names.begin(), names.end(), name) != names.end())
    chosen.push_back(name);
  else {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown " + what + " '" + name + "' (known: " + known + ", all)");
  }
  for (const auto& n : chosen) {
    const auto t0 = std::chrono::steady_clock::now();
    out.append(run(n));
    timing.push_back({n, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  }
  return out;
}

}  // namespace

FockVector parse_fock(const std::string& text) {
  std::string body = text;
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  body = trim(body);
  if (body == "vacuum" || body == "1") return FockVector::vacuum();
  if (body == "h") return FockVector::basis({1});
  if (body == "0") return {};
  static const std::regex term(R"(\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\[([0-9,\s]*)\]\s*)");
  FockVector out;
  std::size_t pos = 0;
  bool first = true;
  while (pos < body.size()) {
    std::smatch m;
    const std::string rest = body.substr(pos);
    if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous))
      throw std::invalid_argument("cannot parse vector term at '" + rest + "'");
    if (!first && m[1].length() == 0) throw std::invalid_argument("missing '+' or '-' before '" + rest + "'");
    Rational c = m[2].matched ? Rational::parse(m[2].str()) : Rational(1);
    if (m[1].str() == "-") c = -c;
    Partition part;
    std::stringstream parts(m[3].str());
    std::string item;
    while (std::getline(parts, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const long v = std::stol(item);
      if (v < 1) throw std::invalid_argument("partition parts must be positive");
      part.push_back(static_cast<int>(v));
    }
    std::sort(part.begin(), part.end(), std::greater<>());
    out.add_term(part, c);
    pos += static_cast<std::size_t>(m.length(0));
    first = false;
  }
  if (first) throw std::invalid_argument("empty vector");
  return out;
}

std::string laurent_to_json(const LaurentPoly& p) { return laurent_json(p).dump(); }

LaurentPoly laurent_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("polynomial JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("polynomial JSON must be an array of [exponent, \"num/den\"]");
  LaurentPoly out;
  for (const auto& t : doc) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
      throw std::invalid_argument("polynomial JSON term must be [exponent, \"num/den\"]");
    out.add_term(t[0].get<Exponent>(), Rational::parse(t[1].get<std::string>()));
  }
  return out;
}

std::string fock_to_json(const FockVector& v) { return fock_json(v).dump(); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Laurent-polynomial calculus for generalized Zhu algebras", "zhukit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_text = "json";
  app.add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  std::function<int(Format)> action;

  // reduce
  auto* reduce = app.add_subcommand("reduce", "canonical representative of f modulo O(N,Q,q)");
  Exponent N = 0, q = 0;
  std::string Q_text = "0", f_text, gamma_text;
  reduce->add_option("--N", N)->required();
  reduce->add_option("--Q", Q_text, "num/den")->required();
  reduce->add_option("--q", q)->required();
  reduce->add_option("--f", f_text, "polynomial text 'c*z^e + ...' or JSON")->required();
  reduce->callback([&] {
    action = [&](Format fmt) {
      const OSpaceSpec spec{N, parse_rational_flag("--Q", Q_text), q};
      const ReducedForm r = reduce_mod_o(parse_poly_flag("--f", f_text), spec);
      emit_value(out, fmt,
                 Json{{"spec", spec_json(spec)}, {"canonical", laurent_json(r.canonical)}, {"text", r.canonical.to_text()}});
      return exit_pass;
    };
  });

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "the involution phi_{N,gamma}");
  phi_cmd->add_option("--N", N)->required();
  phi_cmd->add_option("--gamma", gamma_text, "num/den")->required();
  phi_cmd->add_option("--f", f_text, "polynomial text or JSON")->required();
  phi_cmd->callback([&] {
    action = [&](Format fmt) {
      const Rational gamma = parse_rational_flag("--gamma", gamma_text);
      const LaurentPoly f = parse_poly_flag("--f", f_text);
      const LaurentPoly r = phi(N, gamma, f);
      emit_value(out, fmt,
                 Json{{"N", N}, {"gamma", rational_json(gamma)}, {"input", laurent_json(f)}, {"result", laurent_json(r)},
                      {"text", r.to_text()}});
      return exit_pass;
    };
  });

  // det-gamma
  auto* det_cmd = app.add_subcommand("det-gamma", "determinant of the sector matrix Gamma against its closed form");
  IndexFlags det_idx;
  det_idx.add(det_cmd, false);
  long alpha = 0, beta = 0, r = 0;
  std::vector<std::string> Qs_text;
  std::optional<Exponent> det_N, det_q;
  det_cmd->add_option("--alpha", alpha)->capture_default_str();
  det_cmd->add_option("--beta", beta)->capture_default_str();
  det_cmd->add_option("--Qs", Qs_text, "explicit Q_0,...,Q_{T-1} (with --N and --q)")->delimiter(',');
  det_cmd->add_option("--N", det_N);
  det_cmd->add_option("--q", det_q);
  det_cmd->callback([&] {
    action = [&](Format fmt) {
      long T = 0, Nv = 0, qv = 0;
      std::vector<Rational> Qs;
      if (!Qs_text.empty()) {
        if (!det_N || !det_q) throw UsageError("--Qs: requires --N and --q");
        for (const auto& t : Qs_text) Qs.push_back(parse_rational_flag("--Qs", t));
        T = static_cast<long>(Qs.size());
        Nv = *det_N;
        qv = *det_q;
      } else {
        const ZhuIndex idx = det_idx.build();
        const MuWindow w = mu_window(idx, alpha, beta);
        T = idx.T;
        Nv = w.N;
        qv = w.q;
        Qs = w.Qs;
      }
      if (Nv <= qv) throw PreconditionError("det-gamma: N <= q gives an empty sector matrix");
      const RationalMatrix G = build_Gamma(T, Nv, qv, Qs);
      std::vector<Rational> xs;
      for (const auto& Qv : Qs) xs.push_back(-Qv);
      const Rational det = det_exact(G);
      const Rational closed = det_closed_form(xs, Nv - qv);
      Json qs = Json::array();
      for (const auto& Qv : Qs) qs.push_back(rational_json(Qv));
      emit_value(out, fmt,
                 Json{{"T", T}, {"N", Nv}, {"q", qv}, {"Qs", qs}, {"order", G.rows()}, {"det", rational_json(det)},
                      {"closed_form", rational_json(closed)}, {"equal", det == closed}});
      return det == closed ? exit_pass : exit_failure;
    };
  });

  // mu
  auto* mu_cmd = app.add_subcommand("mu", "unit polynomial mu^{T,r}_{n,m}(alpha,beta,i)");
  IndexFlags mu_idx;
  mu_idx.add(mu_cmd, false);
  Exponent i_exp = 0;
  mu_cmd->add_option("--alpha", alpha)->required();
  mu_cmd->add_option("--beta", beta)->required();
  mu_cmd->add_option("--r", r)->required();
  mu_cmd->add_option("--i", i_exp)->required();
  mu_cmd->callback([&] {
    action = [&](Format fmt) {
      const ZhuIndex idx = mu_idx.build();
      if (r < 0 || r >= idx.T) throw UsageError("--r: must lie in [0, T-1]");
      const MuWindow w = mu_window(idx, alpha, beta);
      const LaurentPoly p = mu(idx, alpha, beta, r, i_exp);
      emit_value(out, fmt,
                 Json{{"index", index_json(idx)}, {"alpha", alpha}, {"beta", beta}, {"r", r}, {"i", i_exp},
                      {"window", Json{{"lo", w.lo}, {"hi", w.hi}}}, {"poly", laurent_json(p)}, {"text", p.to_text()}});
      return exit_pass;
    };
  });

  // pi
  auto* pi_cmd = app.add_subcommand("pi", "product polynomial pi^T_{n,p,m}(alpha,beta)");
  IndexFlags pi_idx;
  pi_idx.add(pi_cmd, true);
  pi_cmd->add_option("--alpha", alpha)->required();
  pi_cmd->add_option("--beta", beta)->required();
  pi_cmd->callback([&] {
    action = [&](Format fmt) {
      const ZhuIndex idx = pi_idx.build();
      const MuWindow w = mu_window(idx, alpha, beta);
      const LaurentPoly p = pi(idx, alpha, beta);
      emit_value(out, fmt,
                 Json{{"index", index_json(idx)}, {"alpha", alpha}, {"beta", beta},
                      {"window", Json{{"lo", w.lo}, {"hi", w.hi}}}, {"poly", laurent_json(p)}, {"text", p.to_text()}});
      return exit_pass;
    };
  });

  // star and omap on the Heisenberg algebra
  long cutoff = 16;
  std::string a_text, b_text, w_text;
  auto* star_cmd = app.add_subcommand("star", "a *^T_{n,p,m} b on the Heisenberg vertex algebra");
  IndexFlags star_idx;
  star_idx.add(star_cmd, true);
  star_cmd->add_option("--a", a_text, "vector, e.g. '[1]' or '2*[2,1] + [1]'")->required();
  star_cmd->add_option("--b", b_text, "vector")->required();
  star_cmd->add_option("--cutoff", cutoff)->capture_default_str();
  star_cmd->callback([&] {
    action = [&](Format fmt) {
      const ZhuIndex idx = star_idx.build();
      if (cutoff < 0) throw UsageError("--cutoff: must be >= 0");
      const Heisenberg V(cutoff);
      const FockVector v = star(V, idx, parse_fock_flag("--a", a_text), parse_fock_flag("--b", b_text));
      emit_value(out, fmt, Json{{"index", index_json(idx)}, {"vector", fock_json(v)}, {"text", v.to_text()}});
      return exit_pass;
    };
  });
  auto* omap_cmd = app.add_subcommand("omap", "o_{n,m}(a) w = a_{wt a + m - n - 1} w");
  IndexFlags omap_idx;
  omap_idx.add(omap_cmd, false);
  omap_cmd->add_option("--a", a_text, "homogeneous vector")->required();
  omap_cmd->add_option("--w", w_text, "vector")->required();
  omap_cmd->add_option("--cutoff", cutoff)->capture_default_str();
  omap_cmd->callback([&] {
    action = [&](Format fmt) {
      const ZhuIndex idx = omap_idx.build();
      if (cutoff < 0) throw UsageError("--cutoff: must be >= 0");
      const Heisenberg V(cutoff);
      const FockVector v = o_map(V, idx, parse_fock_flag("--a", a_text), parse_fock_flag("--w", w_text));
      emit_value(out, fmt, Json{{"index", index_json(idx)}, {"vector", fock_json(v)}, {"text", v.to_text()}});
      return exit_pass;
    };
  });

  // checks
  std::string grid_name = "default", check_name;
  std::optional<long> depth_flag, W_flag, J_flag;
  std::vector<long> Ts_flag;
  bool with_timing = false;
  std::vector<Timed> timing;
  auto lemma_grid = [&] {
    LemmaGrid g = LemmaGrid::preset(grid_name);
    g.depth = depth_flag ? *depth_flag : depth_from_env(g.depth);
    if (g.depth < 0) throw UsageError("--depth: must be >= 0");
    if (!Ts_flag.empty()) g.Ts = Ts_flag;
    return g;
  };
  auto vertex_grid = [&] {
    VertexGrid g = VertexGrid::preset(grid_name);
    if (W_flag) g.W = *W_flag;
    if (J_flag) g.J = *J_flag;
    return g;
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--grid", grid_name, "default or small")->check(CLI::IsMember({"default", "small"}))->capture_default_str();
    cmd->add_flag("--timing", with_timing, "add per-check wall time (JSON field, or stderr for CSV)");
  };

  auto* check_cmd = app.add_subcommand("check", "polynomial-layer lemma checks");
  check_cmd->add_option("name", check_name, "check name or 'all'")->required();
  add_grid(check_cmd);
  check_cmd->add_option("--depth", depth_flag, "generator depth J (default 6, or ZHUKIT_DEPTH)");
  check_cmd->add_option("--T", Ts_flag, "restrict the grid to these T")->delimiter(',');
  check_cmd->callback([&] {
    action = [&](Format fmt) {
      const LemmaGrid g = lemma_grid();
      const Report rep = run_named("lemma", check_name, lemma_names(),
                                   [&](const std::string& n) { return verify_lemma(n, g); }, timing);
      emit_report(out, err, fmt, "check " + check_name, grid_name, rep, timing, with_timing);
      return report_exit(rep);
    };
  });

  auto* checkv_cmd = app.add_subcommand("check-v", "vertex-layer checks on the Heisenberg algebra");
  checkv_cmd->add_option("name", check_name, "check name or 'all'")->required();
  add_grid(checkv_cmd);
  checkv_cmd->add_option("--W", W_flag, "weight bound for O' membership");
  checkv_cmd->add_option("--J", J_flag, "generator depth for O' membership");
  checkv_cmd->callback([&] {
    action = [&](Format fmt) {
      const VertexGrid g = vertex_grid();
      const Report rep = run_named("vertex check", check_name, v_lemma_names(),
                                   [&](const std::string& n) { return verify_v_lemma(n, g); }, timing);
      emit_report(out, err, fmt, "check-v " + check_name, grid_name, rep, timing, with_timing);
      return report_exit(rep);
    };
  });

  auto* checkf_cmd = app.add_subcommand("check-formal", "mode identities and two-variable expansions");
  checkf_cmd->add_option("name", check_name, "check name or 'all'")->required();
  add_grid(checkf_cmd);
  checkf_cmd->callback([&] {
    action = [&](Format fmt) {
      const FormalGrid g = FormalGrid::preset(grid_name);
      const Report rep = run_named("formal check", check_name, formal_check_names(),
                                   [&](const std::string& n) { return verify_formal(n, g); }, timing);
      emit_report(out, err, fmt, "check-formal " + check_name, grid_name, rep, timing, with_timing);
      return report_exit(rep);
    };
  });

  auto* suite_cmd = app.add_subcommand("suite", "every check over one grid preset");
  add_grid(suite_cmd);
  suite_cmd->add_option("--depth", depth_flag, "generator depth J (default 6, or ZHUKIT_DEPTH)");
  suite_cmd->callback([&] {
    action = [&](Format fmt) {
      const LemmaGrid lg = lemma_grid();
      const VertexGrid vg = vertex_grid();
      const FormalGrid fg = FormalGrid::preset(grid_name);
      Report rep;
      rep.append(run_named("lemma", "all", lemma_names(), [&](const std::string& n) { return verify_lemma(n, lg); },
                           timing));
      rep.append(run_named("vertex check", "all", v_lemma_names(),
                           [&](const std::string& n) { return verify_v_lemma(n, vg); }, timing));
      rep.append(run_named("formal check", "all", formal_check_names(),
                           [&](const std::string& n) { return verify_formal(n, fg); }, timing));
      emit_report(out, err, fmt, "suite", grid_name, rep, timing, with_timing);
      return report_exit(rep);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }
  if (!action) {
    err << "usage error: no command given\n";
    return exit_usage;
  }
  try {
    return action(format_text == "csv" ? Format::csv : Format::json);
  } catch (const CutoffError& e) {
    err << "cutoff error: " << e.what() << '\n';
    return exit_precondition;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return exit_precondition;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace zhukit
