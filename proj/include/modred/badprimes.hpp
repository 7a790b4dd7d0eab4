#pragma once

// Bad-prime analysis: the number T of complex solutions, a scan of primes
// for deviating counts, and reconciliation with the certificate modulus.

#include <map>

#include "modred/heights.hpp"
#include "modred/nullsatz.hpp"
#include "modred/parallel.hpp"

namespace modred {

enum class TMethod { automatic, univariate, linear, eliminant, stable_modular };

inline TMethod parse_t_method(const std::string& s) {
  if (s == "auto") return TMethod::automatic;
  if (s == "univariate") return TMethod::univariate;
  if (s == "linear") return TMethod::linear;
  if (s == "eliminant") return TMethod::eliminant;
  if (s == "stable-modular") return TMethod::stable_modular;
  throw input_error("unknown T method '" + s + "'");
}

struct TResult {
  long T = 0;
  std::string provenance;
  bool heuristic = false;
  std::map<std::string, long> values;  // every method that ran
};

struct SystemShape {
  std::size_t m = 0;
  long s = 0;
  long d = 1;
  Real h = 0;
};

inline SystemShape shape_of(const std::vector<IntPoly>& sys, std::size_t m) {
  SystemShape sh;
  sh.m = m;
  sh.s = static_cast<long>(sys.size());
  Integer hmax = 1;
  for (const auto& f : sys) {
    if (f.nvars() != m) throw input_error("polynomial has the wrong number of variables");
    sh.d = std::max<long>(sh.d, f.degree());
    hmax = std::max(hmax, max_abs_coeff(f));
  }
  sh.h = log_integer(hmax);
  return sh;
}

inline bool is_linear(const std::vector<IntPoly>& sys) {
  return std::all_of(sys.begin(), sys.end(), [](const IntPoly& f) { return f.degree() <= 1; });
}

struct LinearCertificate {
  long T = 0;
  Integer modulus;  // nonzero maximal minor of A (T = 1) or of [A|b] (T = 0)
};

/// Exact elimination for systems of total degree <= 1.
inline LinearCertificate linear_certificate(const std::vector<IntPoly>& sys, std::size_t m) {
  IntMatrix A, Ab;
  for (const auto& f : sys) {
    if (f.degree() > 1) throw input_error("system is not linear");
    std::vector<Integer> row(m, 0);
    Integer c = 0;
    for (const auto& t : f.terms()) {
      std::size_t var = m;
      for (std::size_t i = 0; i < m; ++i)
        if (t.exps[i]) var = i;
      if (var == m) c = t.coeff;
      else row[var] = t.coeff;
    }
    A.push_back(row);
    row.push_back(-c);
    Ab.push_back(row);
  }
  const auto ra = rank_info(A), rab = rank_info(Ab);
  LinearCertificate out;
  if (rab.rank > ra.rank) {
    out.T = 0;
    out.modulus = abs(bareiss_det(submatrix(Ab, rab.pivot_rows, rab.pivot_cols)));
  } else if (ra.rank == m) {
    out.T = 1;
    out.modulus = abs(bareiss_det(submatrix(A, ra.pivot_rows, ra.pivot_cols)));
  } else {
    throw input_error("linear system has a positive-dimensional solution set");
  }
  if (out.modulus == 0) throw invariant_violation("selected minor vanishes");
  return out;
}

inline unsigned default_degree_cap(const SystemShape& sh) {
  Integer b = ipow(Integer(sh.d), static_cast<unsigned long>(sh.m));
  return b > 8 ? 8u : static_cast<unsigned>(b.get_ui());
}

struct TOptions {
  std::uint64_t seed = 0;
  std::size_t probes = 25;
  std::uint64_t budget = kDefaultBudget;
};

inline long stable_modular_T(const std::vector<IntPoly>& sys, std::size_t m, const TOptions& opt, std::string& note) {
  const auto sh = shape_of(sys, m);
  auto pool = primes_up_to(10000);
  std::erase_if(pool, [](std::uint64_t p) { return p < 1000; });
  std::mt19937_64 rng(opt.seed + 2024);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(pool.size(), opt.probes));
  std::sort(pool.begin(), pool.end());
  const unsigned cap = std::min(default_degree_cap(sh), 4u);
  std::map<Integer, std::size_t> freq;
  for (auto p : pool) ++freq[count_points_fqbar(sys, m, p, cap, Engine::solver, opt.budget).total];
  auto best = std::max_element(freq.begin(), freq.end(), [](auto& a, auto& b) { return a.second < b.second; });
  note = "count " + best->first.get_str() + " at " + std::to_string(best->second) + "/" + std::to_string(pool.size()) +
         " probe primes in [1000, 10000], degree cap " + std::to_string(cap);
  if (best->second * 10 < pool.size() * 9) throw input_error("no stable modular count: " + note);
  return best->first.get_si();
}

inline TResult compute_T(const std::vector<IntPoly>& sys, std::size_t m, TMethod method = TMethod::automatic,
                         const TOptions& opt = {}) {
  if (sys.empty()) throw input_error("empty system");
  TResult r;
  if (method == TMethod::automatic) {
    if (m == 1) method = TMethod::univariate;
    else if (is_linear(sys)) method = TMethod::linear;
    else method = TMethod::eliminant;
  }
  switch (method) {
    case TMethod::univariate: {
      if (m != 1) throw input_error("univariate method needs one variable");
      IntPoly g(1);
      for (const auto& f : sys) g = g.is_zero() ? f : f.is_zero() ? g : gcd(g, f);
      if (g.is_zero()) throw input_error("all generators are zero: positive-dimensional");
      r.T = g.degree() <= 0 ? 0 : static_cast<long>(squarefree_part(g, 0).degree());
      r.provenance = "univariate";
      break;
    }
    case TMethod::linear:
      r.T = linear_certificate(sys, m).T;
      r.provenance = "linear";
      break;
    case TMethod::eliminant: {
      EliminantOptions eo;
      eo.seed = opt.seed;
      const auto E = compute_eliminant(sys, m, eo);
      r.T = count_T_from_eliminant(E, opt.seed);
      if (r.T != E.T) throw invariant_violation("specialized count disagrees with eliminant degree");
      r.provenance = "eliminant";
      break;
    }
    case TMethod::stable_modular: {
      std::string note;
      r.T = stable_modular_T(sys, m, opt, note);
      r.provenance = "stable-modular (heuristic): " + note;
      r.heuristic = true;
      break;
    }
    case TMethod::automatic: break;
  }
  r.values[r.provenance.substr(0, r.provenance.find(' '))] = r.T;
  return r;
}

// ---------------------------------------------------------------------------

struct CertificateSummary {
  std::string kind;  // eliminant-nullstellensatz | linear-minor
  Integer alpha = 1, beta = 1, modulus = 1;
  long N = 0;
  long eliminant_T = 0;
};

struct BoundSummary {
  Real theorem1, alpha, beta, corollary;
};

struct PrimeRecord {
  std::uint64_t p = 0;
  std::optional<Integer> count;  // nullopt: every generator vanishes mod p
  bool divides_modulus = false;
  bool within_corollary = true;
};

struct BadPrimeReport {
  long T = 0;
  std::uint64_t scanned_up_to = 0;
  unsigned degree_cap = 1;
  std::size_t primes_scanned = 0;
  std::vector<PrimeRecord> deviants;
  std::vector<std::uint64_t> gaps;  // primes skipped on budget
  std::optional<CertificateSummary> certificate;
  BoundSummary bounds;
  bool consistent = true;  // every deviant divides the modulus
  std::vector<std::string> warnings;
};

struct ScanOptions {
  unsigned degree_cap = 0;  // 0: min(d^m, 8)
  bool certificates = true;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
};

inline std::optional<CertificateSummary> certify(const std::vector<IntPoly>& sys, std::size_t m, long T,
                                                 std::uint64_t seed, std::vector<std::string>& warnings) {
  try {
    if (is_linear(sys)) {
      const auto lc = linear_certificate(sys, m);
      CertificateSummary c;
      c.kind = "linear-minor";
      c.modulus = lc.modulus;
      c.alpha = lc.modulus;
      c.eliminant_T = lc.T;
      if (lc.T != T) warnings.push_back("linear elimination gives T = " + std::to_string(lc.T));
      return c;
    }
    EliminantOptions eo;
    eo.seed = seed;
    const auto E = compute_eliminant(sys, m, eo);
    const auto b = beta_certificate(E);
    const auto n = find_certificate(sys, m, E);
    CertificateSummary c;
    c.kind = "eliminant-nullstellensatz";
    c.alpha = n.alpha;
    c.beta = b.beta;
    c.modulus = combined_modulus(n, b);
    c.N = n.N;
    c.eliminant_T = E.T;
    if (E.T != T) warnings.push_back("eliminant degree " + std::to_string(E.T) + " differs from T");
    return c;
  } catch (const std::exception& e) {
    warnings.push_back(std::string("no certificate: ") + e.what());
    return std::nullopt;
  }
}

inline BadPrimeReport scan_bad_primes(const std::vector<IntPoly>& sys, std::size_t m, long T, std::uint64_t p_max,
                                      const ScanOptions& opt = {}) {
  const auto sh = shape_of(sys, m);
  BadPrimeReport rep;
  rep.T = T;
  rep.scanned_up_to = p_max;
  rep.degree_cap = opt.degree_cap ? opt.degree_cap : default_degree_cap(sh);
  const Integer bezout = ipow(Integer(sh.d), static_cast<unsigned long>(m));
  if (rep.degree_cap < bezout)
    rep.warnings.push_back("degree cap " + std::to_string(rep.degree_cap) + " is below the Bezout number " +
                           bezout.get_str() + "; counts may err low");
  rep.bounds.theorem1 = theorem1_bound(static_cast<long>(m), sh.s, sh.d, sh.h);
  rep.bounds.alpha = alpha_bound(static_cast<long>(m), sh.s, sh.d, sh.h);
  rep.bounds.beta = beta_bound(static_cast<long>(m), sh.d, sh.h);
  rep.bounds.corollary = detail::rpow(sh.d, 3 * static_cast<long>(m) + 1) * sh.h +
                         detail::rpow(sh.d, 3 * static_cast<long>(m) + 2);
  if (opt.certificates) rep.certificate = certify(sys, m, T, opt.seed, rep.warnings);

  const auto primes = primes_up_to(p_max);
  rep.primes_scanned = primes.size();
  struct Outcome {
    std::optional<Integer> count;
    bool whole_space = false;
    bool gap = false;
  };
  std::function<Outcome(std::size_t)> task = [&](std::size_t i) {
    Outcome o;
    const auto p = primes[i];
    bool any = false;
    for (const auto& f : sys)
      if (!reduce_mod_p(f, p).is_zero()) any = true;
    if (!any) {
      o.whole_space = true;
      return o;
    }
    try {
      o.count = count_points_fqbar(sys, m, p, rep.degree_cap, Engine::solver, opt.budget, 0, opt.seed).total;
    } catch (const budget_exceeded&) {
      o.gap = true;
    }
    return o;
  };
  const auto outcomes = parallel_map<Outcome>(primes.size(), opt.threads, task);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.gap) {
      rep.gaps.push_back(primes[i]);
      continue;
    }
    if (!o.whole_space && *o.count == T) continue;
    PrimeRecord pr;
    pr.p = primes[i];
    pr.count = o.count;
    pr.divides_modulus = rep.certificate && divides(primes[i], rep.certificate->modulus);
    pr.within_corollary = real_log(static_cast<long>(primes[i])) <= rep.bounds.corollary + kLogSlack;
    if (rep.certificate && !pr.divides_modulus) rep.consistent = false;
    rep.deviants.push_back(pr);
  }
  if (!rep.gaps.empty()) rep.warnings.push_back(std::to_string(rep.gaps.size()) + " primes skipped on budget");
  if (Real(static_cast<long>(rep.deviants.size())) > rep.bounds.corollary)
    rep.warnings.push_back("number of deviating primes exceeds the corollary envelope with constant 1");
  return rep;
}

}  // namespace modred
