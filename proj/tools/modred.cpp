// modred: command line front end. Every subcommand prints a report
// {command, version, seed, params, result, warnings, timings_ms}; --json
// selects the machine-readable form.

#include <CLI11.hpp>

#include <iostream>

#include "report.hpp"

using namespace modred;
using report::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
  bool json = false;
  std::string out;
};

struct Outcome {
  ordered_json params = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::vector<std::string> warnings;
};

struct LoadedSystem {
  SystemFile file;
  std::string digest;
};

LoadedSystem load(const std::string& path) {
  const auto text = report::read_file(path);
  return {parse_system(text), report::digest(text)};
}

std::vector<std::string> u_names(std::size_t m) {
  std::vector<std::string> n;
  for (std::size_t i = 0; i <= m; ++i) n.push_back("U" + std::to_string(i));
  return n;
}

std::vector<std::string> aux_names(const std::vector<std::string>& vars, std::size_t n) {
  auto names = vars;
  if (names.size() < n) names.push_back("X0");
  return names;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Rational r(Integer(digits), ipow(Integer(10), static_cast<unsigned long>(s.size() - dot - 1)));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw input_error("not a rational number: '" + s + "'");
  }
}

Real parse_real(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw input_error("not a real number: '" + s + "'");
  }
}

/// Coordinates separated by ','; each is an integer or base-p digits "c0:c1:...".
FqPoint parse_fq_point(const std::string& s, const FqTower& F) {
  FqPoint pt;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find(':') == std::string::npos) {
      pt.push_back(F.from_integer(Integer(tok)));
      continue;
    }
    std::stringstream ds(tok);
    std::string digit;
    FqElem x = F.zero();
    FqElem power = F.one();
    const FqElem t = F.generator();
    while (std::getline(ds, digit, ':')) {
      x = F.add(x, F.mul(F.from_integer(Integer(digit)), power));
      power = F.mul(power, t);
    }
    pt.push_back(x);
  }
  return pt;
}

QPoint parse_q_point(const std::string& s) {
  QPoint pt;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) pt.push_back(parse_rational(tok));
  return pt;
}

std::vector<IntPoly> variety_for(const SystemFile& v, std::size_t m) {
  if (v.variables.size() != m) throw input_error("variety file must declare the system's variables");
  return as_polynomials(v);
}

std::string text_of(const ordered_json& j, const std::string& indent = "") {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() && !(v.contains("value") && v.contains("decimal") && v.size() == 2)) {
      out += indent + it.key() + ":\n" + text_of(v, indent + "  ");
    } else if (v.is_object()) {
      out += indent + it.key() + ": " + v["decimal"].get<std::string>() + "\n";
    } else if (v.is_string()) {
      out += indent + it.key() + ": " + v.get<std::string>() + "\n";
    } else {
      out += indent + it.key() + ": " + v.dump() + "\n";
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modred: reductions of polynomial systems and dynamical systems modulo primes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for every randomized step");
  app.add_option("--threads", g.threads, "worker threads for prime and subset scans")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", g.budget, "enumeration budget (elementary steps)");
  app.add_flag("--json", g.json, "print the JSON report");
  app.add_option("--out", g.out, "write the report to a file");

  std::function<Outcome()> run;
  std::string command;
  auto sub = [&](const std::string& name, const std::string& help) {
    return app.add_subcommand(name, help);
  };

  // bounds --------------------------------------------------------------
  struct {
    std::string which, h = "0", hF = "0", eps = "1", kind;
    long m = 1, s = 1, d = 1, D = 1, k = 1, L = 1, degF = 1, ell = 1, r = 1;
  } bo;
  {
    auto* s = sub("bounds", "evaluate a bound formula");
    s->set_help_flag("--help", "Print this help message and exit");
    s->add_option("--which", bo.which, "theorem1|alpha|beta|eliminant|bezout|composition|iterate|cycle|escape|uml")
        ->required();
    s->add_option("--m", bo.m);
    s->add_option("--s", bo.s);
    s->add_option("--d", bo.d);
    s->add_option("--h", bo.h);
    s->add_option("--D", bo.D);
    s->add_option("--k", bo.k);
    s->add_option("--L", bo.L);
    s->add_option("--eps", bo.eps);
    s->add_option("--kind", bo.kind, "composition: poly-general|poly-same-vars|rational; iterate/cycle: poly|rational");
    s->add_option("--degF", bo.degF);
    s->add_option("--hF", bo.hF);
    s->add_option("--ell", bo.ell);
    s->add_option("--r", bo.r);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const Real h = parse_real(bo.h);
        o.params = {{"which", bo.which}};
        auto& r = o.result;
        if (bo.which == "theorem1" || bo.which == "alpha") {
          o.params.update({{"m", bo.m}, {"s", bo.s}, {"d", bo.d}, {"h", bo.h}});
          r["value"] = report::real(bo.which == "theorem1" ? theorem1_bound(bo.m, bo.s, bo.d, h)
                                                           : alpha_bound(bo.m, bo.s, bo.d, h));
        } else if (bo.which == "beta") {
          o.params.update({{"m", bo.m}, {"d", bo.d}, {"h", bo.h}});
          r["value"] = report::real(beta_bound(bo.m, bo.d, h));
        } else if (bo.which == "eliminant" || bo.which == "bezout") {
          o.params.update({{"m", bo.m}, {"d", bo.d}, {"h", bo.h}});
          const auto [deg, ht] = bo.which == "eliminant" ? eliminant_bounds(bo.m, bo.d, h) : bezout_T_and_height(bo.m, bo.d, h);
          r["degree"] = report::integer(deg);
          r["height"] = report::real(ht);
        } else if (bo.which == "composition") {
          o.params.update({{"kind", bo.kind}, {"degF", bo.degF}, {"hF", bo.hF}, {"d", bo.d}, {"h", bo.h}, {"m", bo.m}, {"ell", bo.ell}});
          const auto b = composition_bounds(parse_composition_kind(bo.kind), bo.degF, parse_real(bo.hF), bo.d, h, bo.m, bo.ell);
          r["degree"] = report::integer(b.degree);
          r["height"] = report::real(b.height);
        } else if (bo.which == "iterate") {
          o.params.update({{"kind", bo.kind}, {"d", bo.d}, {"m", bo.m}, {"k", bo.k}, {"h", bo.h}});
          const auto b = iterate_bounds(parse_map_kind(bo.kind), bo.d, bo.m, bo.k, h);
          r["degree"] = report::integer(b.degree);
          r["height"] = report::real(b.height);
        } else if (bo.which == "cycle") {
          o.params.update({{"kind", bo.kind}, {"d", bo.d}, {"m", bo.m}, {"k", bo.k}, {"h", bo.h}});
          const auto c = cycle_bounds(parse_map_kind(bo.kind), bo.d, bo.m, bo.k, h);
          r["count"] = report::integer(c.count);
          r["system"] = {{"variables", c.system_vars}, {"equations", c.system_size},
                         {"degree", report::integer(c.system_degree)}, {"height", report::real(c.system_height)}};
          r["log_modulus"] = report::real(c.log_modulus);
        } else if (bo.which == "escape") {
          o.params.update({{"D", bo.D}, {"s", bo.s}, {"d", bo.d}, {"m", bo.m}, {"r", bo.r}});
          r["value"] = report::integer(bezout_escape_count(bo.D, bo.s, bo.d, bo.m, bo.r));
        } else if (bo.which == "uml") {
          o.params.update({{"eps", bo.eps}, {"L", bo.L}});
          r["M"] = report::integer(uml_M(parse_rational(bo.eps), bo.L));
        } else {
          throw input_error("unknown bound '" + bo.which + "'");
        }
        return o;
      };
    });
  }

  // iterate -------------------------------------------------------------
  struct {
    std::string system;
    long k = 1;
    bool all = false;
  } it;
  {
    auto* s = sub("iterate", "k-th iterate of a system as reduced rational functions");
    s->add_option("--system", it.system)->required();
    s->add_option("--k", it.k)->required();
    s->add_flag("--all", it.all, "report every iterate 1..k");
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(it.system);
        const auto S = DynSystem::from_file(L.file);
        o.params = {{"system", L.digest}, {"k", it.k}};
        const auto its = iterates(S, it.k);
        ordered_json arr = ordered_json::array();
        for (long j = it.all ? 1 : it.k; j <= it.k; ++j) {
          ordered_json e;
          e["k"] = j;
          for (const auto& r : its[j - 1].functions) {
            e["functions"].push_back(format_ratfunc(r, L.file.variables));
            e["degrees"].push_back(r.degree());
            e["heights"].push_back(std::max(height(r.num()).log_value, height(r.den()).log_value));
          }
          arr.push_back(e);
        }
        o.result["iterates"] = arr;
        return o;
      };
    });
  }

  // orbit ---------------------------------------------------------------
  struct {
    std::string system, start;
    std::uint64_t p = 0, steps = 100000;
    unsigned e = 1;
  } ob;
  {
    auto* s = sub("orbit", "pointwise orbit over F_{p^e} or, without --p, over Q");
    s->add_option("--system", ob.system)->required();
    s->add_option("--start", ob.start, "comma-separated coordinates")->required();
    s->add_option("--p", ob.p);
    s->add_option("--e", ob.e);
    s->add_option("--steps", ob.steps);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(ob.system);
        const auto S = DynSystem::from_file(L.file);
        o.params = {{"system", L.digest}, {"start", ob.start}, {"p", ob.p}, {"e", ob.e}, {"steps", ob.steps}};
        auto fill = [&](const auto& rec, auto&& fmt) {
          o.result["status"] = to_string(rec.status);
          o.result["T"] = rec.T();
          o.result["tail_length"] = rec.tail_length;
          o.result["cycle_length"] = rec.cycle_length;
          ordered_json pts = ordered_json::array();
          for (const auto& pt : rec.points) pts.push_back(fmt(pt));
          o.result["points"] = pts;
        };
        if (ob.p == 0) {
          const auto pt = parse_q_point(ob.start);
          if (pt.size() != S.m) throw input_error("start point has the wrong dimension");
          fill(orbit_rational(S, pt, ob.steps), [](const QPoint& q) { return report::qpoint(q); });
        } else {
          if (!is_prime(ob.p)) throw input_error("p is not prime");
          FqTower F(ob.p, ob.e);
          const auto pt = parse_fq_point(ob.start, F);
          if (pt.size() != S.m) throw input_error("start point has the wrong dimension");
          fill(orbit(ReducedSystem(S, F), pt, ob.steps), [&](const FqPoint& q) { return report::point(F, q); });
        }
        return o;
      };
    });
  }

  // periodic ------------------------------------------------------------
  struct {
    std::string system;
    long k = 1;
    std::uint64_t p = 0;
    unsigned cap = 0;
  } pe;
  {
    auto* s = sub("periodic", "k-periodic points over F_p-bar up to a residue degree");
    s->add_option("--system", pe.system)->required();
    s->add_option("--k", pe.k)->required();
    s->add_option("--p", pe.p)->required();
    s->add_option("--degree-cap", pe.cap, "default: min(Bezout number of V_k, 8)");
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(pe.system);
        const auto S = DynSystem::from_file(L.file);
        unsigned cap = pe.cap;
        if (cap == 0) {
          Integer b = 1;
          for (const auto& f : build_periodicity_system(S, pe.k, false)) b *= std::max<std::int64_t>(f.degree(), 1);
          cap = b > 8 ? 8u : static_cast<unsigned>(b.get_ui());
          if (b > 8) o.warnings.push_back("degree cap 8 is below the Bezout number " + b.get_str());
        }
        o.params = {{"system", L.digest}, {"k", pe.k}, {"p", pe.p}, {"degree_cap", cap}};
        const auto r = periodic_points(S, pe.k, pe.p, cap, g.budget);
        ordered_json by = ordered_json::array();
        for (unsigned e = 1; e <= cap; ++e) {
          FqTower F(pe.p, e);
          ordered_json lvl;
          lvl["degree"] = e;
          lvl["points"] = ordered_json::array();
          for (const auto& pt : r.points.by_degree[e - 1]) lvl["points"].push_back(report::point(F, pt));
          by.push_back(lvl);
        }
        o.result["count"] = r.points.total();
        o.result["by_degree"] = by;
        o.result["routes_agree"] = r.routes_agree ? ordered_json(*r.routes_agree) : ordered_json(nullptr);
        o.result["positive_dimensional"] = r.positive_dimensional;
        if (!r.routes_agree) o.warnings.push_back("orbit scan skipped: field too large");
        if (r.positive_dimensional) o.warnings.push_back("V_k is positive-dimensional over Q");
        return o;
      };
    });
  }

  // badprimes -----------------------------------------------------------
  struct {
    std::string system, method = "auto";
    std::uint64_t pmax = 100;
    unsigned cap = 0;
    bool no_cert = false;
  } bp;
  {
    auto* s = sub("badprimes", "scan primes for deviating point counts");
    s->add_option("--system", bp.system)->required();
    s->add_option("--pmax", bp.pmax);
    s->add_option("--degree-cap", bp.cap, "default: min(d^m, 8)");
    s->add_option("--method", bp.method, "auto|univariate|linear|eliminant|stable-modular");
    s->add_flag("--no-certificates", bp.no_cert);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(bp.system);
        const auto sys = as_polynomials(L.file);
        const auto m = L.file.variables.size();
        TOptions to;
        to.seed = g.seed;
        to.budget = g.budget;
        const auto T = compute_T(sys, m, parse_t_method(bp.method), to);
        ScanOptions so;
        so.degree_cap = bp.cap;
        so.certificates = !bp.no_cert;
        so.threads = g.threads;
        so.budget = g.budget;
        so.seed = g.seed;
        const auto rep = scan_bad_primes(sys, m, T.T, bp.pmax, so);
        o.params = {{"system", L.digest}, {"pmax", bp.pmax}, {"degree_cap", rep.degree_cap}, {"method", bp.method}};
        auto& r = o.result;
        r["T"] = T.T;
        r["provenance"] = T.provenance;
        r["primes_scanned"] = rep.primes_scanned;
        r["S_F"] = ordered_json::array();
        for (const auto& d : rep.deviants) {
          ordered_json e;
          e["p"] = d.p;
          e["count"] = d.count ? report::integer(*d.count) : ordered_json("all");
          e["divides_modulus"] = d.divides_modulus;
          e["within_corollary"] = d.within_corollary;
          r["S_F"].push_back(e);
        }
        r["gaps"] = rep.gaps;
        if (rep.certificate) {
          const auto& c = *rep.certificate;
          r["certificate"] = {{"kind", c.kind}, {"alpha", report::integer(c.alpha)}, {"beta", report::integer(c.beta)},
                              {"modulus", report::integer(c.modulus)}, {"N", c.N}};
        } else {
          r["certificate"] = nullptr;
        }
        r["bounds"] = {{"theorem1", report::real(rep.bounds.theorem1)}, {"alpha", report::real(rep.bounds.alpha)},
                       {"beta", report::real(rep.bounds.beta)}, {"corollary", report::real(rep.bounds.corollary)}};
        r["consistent"] = rep.consistent;
        o.warnings = rep.warnings;
        if (T.heuristic) o.warnings.push_back("T is heuristic");
        return o;
      };
    });
  }

  // eliminant -----------------------------------------------------------
  struct {
    std::string system;
    std::uint64_t check = 0;
  } el;
  {
    auto* s = sub("eliminant", "eliminant E_V and its squarefreeness certificate beta");
    s->add_option("--system", el.system)->required();
    s->add_option("--check-primes", el.check, "test squarefreeness mod every prime up to this bound");
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(el.system);
        const auto sys = as_polynomials(L.file);
        const auto m = L.file.variables.size();
        o.params = {{"system", L.digest}, {"check_primes", el.check}};
        EliminantOptions eo;
        eo.seed = g.seed;
        const auto E = compute_eliminant(sys, m, eo);
        const auto b = beta_certificate(E);
        const auto names = u_names(m);
        auto& r = o.result;
        r["E"] = format_poly(E.poly, names);
        r["T"] = E.T;
        r["method"] = to_string(E.method);
        r["beta0"] = report::integer(b.beta0);
        r["delta"] = format_poly(b.delta, names);
        r["beta"] = report::integer(b.beta);
        if (el.check) {
          ordered_json fails = ordered_json::array();
          bool sound = true;
          for (auto p : primes_up_to(el.check))
            if (!verify_squarefree_mod_p(E, p)) {
              fails.push_back(p);
              sound = sound && divides(p, b.beta);
            }
          r["squarefree_failures"] = fails;
          r["failures_divide_beta"] = sound;
        }
        o.warnings = E.notes;
        return o;
      };
    });
  }

  // nullsatz ------------------------------------------------------------
  struct {
    std::string system;
    long cap = -1, ncap = 2;
  } ns;
  {
    auto* s = sub("nullsatz", "certificate alpha E^N = A L + sum B_j F_j");
    s->add_option("--system", ns.system)->required();
    s->add_option("--degree-cap", ns.cap, "default: deg E + 2d");
    s->add_option("--N-cap", ns.ncap);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(ns.system);
        const auto sys = as_polynomials(L.file);
        const auto m = L.file.variables.size();
        EliminantOptions eo;
        eo.seed = g.seed;
        const auto E = compute_eliminant(sys, m, eo);
        NullsatzOptions no;
        no.degree_cap = ns.cap;
        no.N_cap = ns.ncap;
        const auto c = find_certificate(sys, m, E, no);
        const auto b = beta_certificate(E);
        o.params = {{"system", L.digest}, {"degree_cap", ns.cap}, {"N_cap", ns.ncap}};
        auto names = u_names(m);
        names.insert(names.end(), L.file.variables.begin(), L.file.variables.end());
        auto& r = o.result;
        r["E"] = format_poly(E.poly, u_names(m));
        r["alpha"] = report::integer(c.alpha);
        r["N"] = c.N;
        r["degree_used"] = c.degree_used;
        r["cofactor_L"] = format_poly(c.cofactor_L, names);
        r["cofactors"] = ordered_json::array();
        for (const auto& B : c.cofactors) r["cofactors"].push_back(format_poly(B, names));
        r["verified"] = verify_certificate(sys, m, E, c);
        r["beta"] = report::integer(b.beta);
        r["modulus"] = report::integer(combined_modulus(c, b));
        return o;
      };
    });
  }

  // visits --------------------------------------------------------------
  struct {
    std::string system, variety, start;
    std::uint64_t p = 0, N = 100;
    unsigned e = 1;
  } vi;
  {
    auto* s = sub("visits", "indices n < N with the orbit point on the variety");
    s->add_option("--system", vi.system)->required();
    s->add_option("--variety", vi.variety)->required();
    s->add_option("--p", vi.p)->required();
    s->add_option("--e", vi.e);
    s->add_option("--start", vi.start)->required();
    s->add_option("--N", vi.N);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(vi.system);
        const auto V = load(vi.variety);
        const auto S = DynSystem::from_file(L.file);
        if (!is_prime(vi.p)) throw input_error("p is not prime");
        FqTower F(vi.p, vi.e);
        const auto idx = variety_visits(S, variety_for(V.file, S.m), F, parse_fq_point(vi.start, F), vi.N);
        o.params = {{"system", L.digest}, {"variety", V.digest}, {"p", vi.p}, {"e", vi.e}, {"start", vi.start}, {"N", vi.N}};
        o.result["visits"] = report::indices(idx);
        Rational freq(static_cast<unsigned long>(idx.indices.size()), static_cast<unsigned long>(std::max<std::uint64_t>(vi.N, 1)));
        freq.canonicalize();
        o.result["frequency"] = freq.get_str();
        const auto M = idx.indices.size();
        if (M >= 2 && 2 * M < vi.N) {
          const auto w = gap_lemma(idx);
          o.result["gap"] = {{"r", w.r}, {"count", w.count}, {"t", w.t}};
        } else {
          o.result["gap"] = nullptr;
        }
        return o;
      };
    });
  }

  // intersect -----------------------------------------------------------
  struct {
    std::string system, system2, u, v;
    std::uint64_t p = 0, N = 100;
    unsigned e = 1;
  } in;
  {
    auto* s = sub("intersect", "indices where two orbits coincide");
    s->add_option("--system", in.system)->required();
    s->add_option("--system2", in.system2)->required();
    s->add_option("--p", in.p)->required();
    s->add_option("--e", in.e);
    s->add_option("--u", in.u)->required();
    s->add_option("--v", in.v)->required();
    s->add_option("--N", in.N);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto A = load(in.system), B = load(in.system2);
        if (!is_prime(in.p)) throw input_error("p is not prime");
        FqTower F(in.p, in.e);
        const auto res = orbit_intersection(DynSystem::from_file(A.file), DynSystem::from_file(B.file), F,
                                            parse_fq_point(in.u, F), parse_fq_point(in.v, F), in.N);
        o.params = {{"system", A.digest}, {"system2", B.digest}, {"p", in.p}, {"e", in.e}, {"u", in.u}, {"v", in.v}, {"N", in.N}};
        o.result["direct"] = report::indices(res.direct);
        o.result["diagonal"] = report::indices(res.diagonal);
        o.result["agree"] = res.agree;
        return o;
      };
    });
  }

  // gaplemma ------------------------------------------------------------
  std::string gl_file;
  {
    auto* s = sub("gaplemma", "most frequent small gap of an index set");
    s->add_option("--indices", gl_file, "index-list file")->required();
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto text = report::read_file(gl_file);
        const auto l = parse_index_list(text);
        const auto w = gap_lemma(l);
        const auto M = l.indices.size();
        o.params = {{"indices", report::digest(text)}, {"N", l.N}, {"M", M}};
        Rational rbound(Integer(2 * l.N), Integer(M - 1)), cbound(Integer(M - 1) * (M - 1), Integer(4 * l.N));
        rbound.canonicalize();
        cbound.canonicalize();
        o.result = {{"r", w.r}, {"count", w.count}, {"t", w.t}, {"r_bound", rbound.get_str()}, {"count_bound", cbound.get_str()}};
        return o;
      };
    });
  }

  // escape --------------------------------------------------------------
  struct {
    std::string system, variety;
    long kmax = 1;
    std::vector<std::uint64_t> primes{101, 103, 107, 109, 113};
    unsigned cap = 2;
  } es;
  {
    auto* s = sub("escape", "point counts of {P(X) = P(R^(k)(X)) = 0} at probe primes");
    s->add_option("--system", es.system)->required();
    s->add_option("--variety", es.variety)->required();
    s->add_option("--kmax", es.kmax);
    s->add_option("--primes", es.primes)->delimiter(',');
    s->add_option("--degree-cap", es.cap);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto L = load(es.system), V = load(es.variety);
        const auto S = DynSystem::from_file(L.file);
        for (auto p : es.primes)
          if (!is_prime(p)) throw input_error(std::to_string(p) + " is not prime");
        const auto steps = escape_check(S, variety_for(V.file, S.m), es.kmax, es.primes, es.cap, g.budget);
        o.params = {{"system", L.digest}, {"variety", V.digest}, {"kmax", es.kmax}, {"primes", es.primes}, {"degree_cap", es.cap}};
        o.result["steps"] = ordered_json::array();
        for (const auto& st : steps) {
          ordered_json e;
          e["k"] = st.k;
          e["cap"] = report::integer(st.cap);
          e["counts"] = ordered_json::array();
          for (const auto& c : st.counts) e["counts"].push_back(c ? report::integer(*c) : ordered_json(nullptr));
          e["verdict"] = st.verdict;
          o.result["steps"].push_back(e);
        }
        return o;
      };
    });
  }

  // uml -----------------------------------------------------------------
  struct {
    std::string system, variety, eps = "1";
    long L = 1;
    std::uint64_t pmax = 100;
    unsigned cap = 1;
    std::size_t max_subsets = 256;
  } um;
  {
    auto* s = sub("uml", "Gamma-systems over all (L+1)-subsets of {0..M-1}");
    s->add_option("--system", um.system)->required();
    s->add_option("--variety", um.variety)->required();
    s->add_option("--L", um.L);
    s->add_option("--eps", um.eps);
    s->add_option("--pmax", um.pmax);
    s->add_option("--degree-cap", um.cap);
    s->add_option("--max-subsets", um.max_subsets);
    s->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto Ls = load(um.system), V = load(um.variety);
        const auto S = DynSystem::from_file(Ls.file);
        UmlOptions uo;
        uo.degree_cap = um.cap;
        uo.max_subsets = um.max_subsets;
        uo.threads = g.threads;
        uo.budget = g.budget;
        const auto rep = uml_experiment(S, variety_for(V.file, S.m), um.L, parse_rational(um.eps), um.pmax, uo);
        o.params = {{"system", Ls.digest}, {"variety", V.digest}, {"L", um.L}, {"eps", um.eps}, {"pmax", um.pmax}, {"degree_cap", um.cap}};
        o.result["M"] = report::integer(rep.M);
        o.result["subsets"] = ordered_json::array();
        for (const auto& f : rep.findings) {
          ordered_json e;
          e["indices"] = f.subset;
          e["polynomials"] = f.polys;
          e["emptiness"] = f.emptiness;
          e["alpha"] = f.alpha ? report::integer(*f.alpha) : ordered_json(nullptr);
          e["solvable_primes"] = f.solvable_primes;
          o.result["subsets"].push_back(e);
        }
        o.result["support"] = rep.support;
        o.warnings.push_back("uniform boundedness is an input hypothesis; orbits are only sampled");
        return o;
      };
    });
  }

  // gen -----------------------------------------------------------------
  struct {
    std::size_t m = 2, s = 1;
    std::vector<unsigned> exps;
    std::string write_system, write_variety;
  } ge;
  {
    auto* s = sub("gen", "generate a triangular or monomial-escape system");
    s->require_subcommand(1);
    auto* tri = s->add_subcommand("triangular", "F_i in Z[X_i..X_m], linear in X_i");
    tri->add_option("--m", ge.m);
    tri->add_option("--exponents", ge.exps, "s_{i,j} for i < j, row-major; default all 1")->delimiter(',');
    tri->add_option("--write-system", ge.write_system);
    tri->final_callback([&] {
      run = [&] {
        Outcome o;
        std::vector<std::vector<unsigned>> sm(ge.m, std::vector<unsigned>(ge.m, 0));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < ge.m; ++i)
          for (std::size_t j = i + 1; j < ge.m; ++j) {
            if (!ge.exps.empty() && idx >= ge.exps.size()) throw input_error("too few exponents");
            sm[i][j] = ge.exps.empty() ? 1 : ge.exps[idx++];
          }
        if (idx < ge.exps.size()) throw input_error("too many exponents");
        const auto S = gen_triangular(ge.m, sm, g.seed);
        const auto vars = default_names(ge.m);
        const auto text = format_system(make_system_file(vars, S.functions));
        o.params = {{"m", ge.m}, {"exponents", ge.exps}};
        o.result["system"] = text;
        if (!ge.write_system.empty()) std::ofstream(ge.write_system) << text;
        return o;
      };
    });
    auto* mono = s->add_subcommand("monomial-escape", "X_i -> X_i^{e_i} with a Vandermonde variety");
    mono->add_option("--s", ge.s);
    mono->add_option("--write-system", ge.write_system);
    mono->add_option("--write-variety", ge.write_variety);
    mono->final_callback([&] {
      run = [&] {
        Outcome o;
        const auto me = gen_monomial_escape(ge.s);
        const auto vars = default_names(2 * ge.s);
        const auto sys = format_system(make_system_file(vars, me.system.functions));
        const auto var = format_system(make_variety_file(vars, me.variety));
        o.params = {{"s", ge.s}};
        o.result = {{"d", me.d}, {"e", me.e}, {"A", me.A}, {"system", sys}, {"variety", var}};
        if (!ge.write_system.empty()) std::ofstream(ge.write_system) << sys;
        if (!ge.write_variety.empty()) std::ofstream(ge.write_variety) << var;
        return o;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    command += (command.empty() ? "" : " ") + a->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  ordered_json rep;
  rep["command"] = command;
  rep["version"] = kVersion;
  rep["seed"] = g.seed;
  try {
    Outcome o = run();
    rep["params"] = o.params;
    rep["result"] = o.result;
    rep["warnings"] = o.warnings;
  } catch (const budget_exceeded& e) {
    code = 2;
    rep["error"] = {{"kind", "budget"}, {"message", e.what()}};
  } catch (const invariant_violation& e) {
    code = 3;
    rep["error"] = {{"kind", "invariant"}, {"message", e.what()}};
  } catch (const input_error& e) {
    code = 1;
    rep["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = 1;
    rep["error"] = {{"kind", "input"}, {"message", e.what()}};
  }
  if (!rep.contains("params")) {
    rep["params"] = ordered_json::object();
    rep["result"] = nullptr;
    rep["warnings"] = ordered_json::array();
  }
  rep["timings_ms"] = {{"total", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};

  std::string text;
  if (g.json) {
    text = rep.dump(2) + "\n";
  } else if (code != 0) {
    text = "error (" + rep["error"]["kind"].get<std::string>() + "): " + rep["error"]["message"].get<std::string>() + "\n";
  } else {
    text = command + "\n" + text_of(rep["result"], "  ");
    for (const auto& w : rep["warnings"]) text += "warning: " + w.get<std::string>() + "\n";
  }
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) {
      std::cerr << "cannot write '" << g.out << "'\n";
      return 1;
    }
    f << text;
  } else if (code != 0 && !g.json) {
    std::cerr << text;
  } else {
    std::cout << text;
  }
  return code;
}
