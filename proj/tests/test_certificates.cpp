#include <cmath>

#include "oracles.hpp"
#include "support.hpp"

using namespace modred;
using namespace modred::testing;

namespace {

double to_d(const Real& x) { return x.convert_to<double>(); }

EliminantForm form(const std::string& text, std::size_t m, long T) {
  EliminantForm E;
  E.poly = PU(text, m + 1);
  E.T = T;
  return E;
}

void expect_clean(const oracle::Tally& t) {
  EXPECT_GT(t.instances, 0);
  EXPECT_EQ(t.violations, 0) << t.first;
}

}  // namespace

// ---------------------------------------------------------------- heights

TEST(Heights, Constants) {
  EXPECT_EQ(C1(2), 26);
  EXPECT_EQ(A1(2), 24);
  EXPECT_EQ(B1(3), 6);
  EXPECT_NEAR(to_d(B2(2)), 8 * std::log(3.0) + 10, 1e-12);
  EXPECT_NEAR(to_d(C2(2, 3)), 209 * std::log(27.0), 1e-9);
  EXPECT_NEAR(to_d(A2(2, 3)), 206 * std::log(9.0), 1e-9);
  EXPECT_NEAR(to_d(A2(1, 5)), 152 * std::log(7.0) + 48 * std::log(3.0), 1e-9);
}

TEST(Heights, MainBoundExample) {
  const double v = to_d(theorem1_bound(2, 3, 2, Real(1)));
  EXPECT_NEAR(v, 26.0 * 128 + 209 * std::log(27.0) * 256, 1e-6);
  EXPECT_NEAR(v / 1e5, 1.797, 5e-4);
}

TEST(Heights, BetaBoundExample) {
  EXPECT_NEAR(to_d(beta_bound(1, 2, Real(0))), (6 * std::log(2.0) + 6) * 4, 1e-9);
}

TEST(Heights, EliminantAndBezout) {
  auto [T1, h1] = eliminant_bounds(1, 2, Real(0));
  EXPECT_EQ(T1, 2);
  EXPECT_NEAR(to_d(h1), 4 * std::log(2.0), 1e-12);
  auto [T2, h2] = eliminant_bounds(2, 3, Real(1));
  EXPECT_EQ(T2, 9);
  EXPECT_NEAR(to_d(h2), 6 + 27 * std::log(3.0), 1e-9);
  EXPECT_NEAR(to_d(eliminant_bounds(1, 1, Real(0)).second), 2 * std::log(2.0), 1e-12);

  EXPECT_EQ(bezout_T_and_height(2, 2, Real(0)).first, 4);
  EXPECT_EQ(bezout_T_and_height(3, 1, Real(0)).first, 1);
  EXPECT_NEAR(to_d(bezout_T_and_height(1, 3, Real(std::log(2.0))).second), 4 * std::log(2.0), 1e-12);
}

TEST(Heights, CompositionAndIterates) {
  EXPECT_EQ(composition_bounds(CompositionKind::rational, 2, Real(0), 2, Real(0), 2).degree, 8);
  EXPECT_NEAR(to_d(composition_bounds(CompositionKind::poly_same_vars, 3, Real(1), 1, Real(0), 1).height),
              1 + 6 * std::log(2.0), 1e-12);
  EXPECT_NEAR(to_d(composition_bounds(CompositionKind::poly_general, 0, Real(2), 3, Real(5), 2, 1).height), 2, 1e-12);

  EXPECT_NEAR(to_d(iterate_bounds(MapKind::poly, 2, 1, 3, Real(0)).height), 18 * std::log(2.0), 1e-12);
  EXPECT_EQ(iterate_bounds(MapKind::rational, 2, 2, 3, Real(0)).degree, 32);
  EXPECT_NEAR(to_d(iterate_bounds(MapKind::poly, 3, 2, 1, Real(1.5)).height), 1.5, 1e-12);
  EXPECT_THROW(iterate_bounds(MapKind::poly, 1, 2, 2, Real(0)), input_error);
}

TEST(Heights, CycleEscapeUml) {
  EXPECT_EQ(cycle_bounds(MapKind::poly, 2, 2, 2, Real(0)).count, 16);
  EXPECT_EQ(cycle_bounds(MapKind::rational, 2, 2, 1, Real(0)).count, 512);
  EXPECT_THROW(cycle_bounds(MapKind::poly, 2, 1, 2, Real(0)), input_error);

  EXPECT_EQ(bezout_escape_count(1, 1, 2, 2, 1), 10);
  EXPECT_EQ(bezout_escape_count(2, 2, 2, 2, 1), 320);
  EXPECT_THROW(bezout_escape_count(1, 0, 2, 2, 1), input_error);

  EXPECT_EQ(uml_M(Rational(1), 1), 3);
  EXPECT_EQ(uml_M(Rational(1, 2), 2), 9);
  EXPECT_THROW(uml_M(Rational(1), 0), input_error);
}

TEST(Heights, MonotoneInHeightAndDegree) {
  for (long m = 1; m <= 3; ++m)
    for (long d = 1; d <= 4; ++d)
      for (int hi = 0; hi < 4; ++hi) {
        const Real h(hi), h2(hi + 1);
        EXPECT_LE(theorem1_bound(m, 3, d, h), theorem1_bound(m, 3, d, h2));
        EXPECT_LE(theorem1_bound(m, 3, d, h), theorem1_bound(m, 3, d + 1, h));
        EXPECT_LE(alpha_bound(m, 3, d, h), alpha_bound(m, 3, d, h2));
        EXPECT_LE(alpha_bound(m, 3, d, h), alpha_bound(m, 3, d + 1, h));
        EXPECT_LE(beta_bound(m, d, h), beta_bound(m, d, h2));
        EXPECT_LE(beta_bound(m, d, h), beta_bound(m, d + 1, h));
        EXPECT_LE(eliminant_bounds(m, d, h).second, eliminant_bounds(m, d + 1, h).second);
        EXPECT_LE(eliminant_bounds(m, d, h).second, eliminant_bounds(m, d, h2).second);
        EXPECT_LE(bezout_T_and_height(m, d, h).second, bezout_T_and_height(m, d + 1, h).second);
        for (auto kind : {CompositionKind::poly_general, CompositionKind::poly_same_vars, CompositionKind::rational}) {
          EXPECT_LE(composition_bounds(kind, 2, Real(1), d, h, m).height,
                    composition_bounds(kind, 2, Real(1), d + 1, h, m).height);
          EXPECT_LE(composition_bounds(kind, 2, Real(1), d, h, m).height,
                    composition_bounds(kind, 2, Real(1), d, h2, m).height);
        }
        if (d >= 2) {
          EXPECT_LE(iterate_bounds(MapKind::poly, d, m, 3, h).height, iterate_bounds(MapKind::poly, d + 1, m, 3, h).height);
          EXPECT_LE(iterate_bounds(MapKind::poly, d, m, 3, h).height, iterate_bounds(MapKind::poly, d, m, 3, h2).height);
        }
      }
}

TEST(Heights, ExactEnvelopeHelpers) {
  EXPECT_TRUE(exp_envelope(Integer(72), Integer(1), Integer(3), Integer(2), 2, Integer(3)));
  EXPECT_FALSE(exp_envelope(Integer(73), Integer(1), Integer(3), Integer(2), 2, Integer(3)));
  // (x+1)^2: factors of height 1, product height 2
  EXPECT_TRUE(product_envelope_holds(Integer(2), {Integer(1), Integer(1)}, 2, 1));
  EXPECT_TRUE(sum_envelope_holds(Integer(6), {Integer(3), Integer(2)}));
  EXPECT_FALSE(sum_envelope_holds(Integer(7), {Integer(3), Integer(2)}));
}

// ---------------------------------------------------------------- envelopes

TEST(Envelope, Product) { expect_clean(oracle::product_envelope(11, 60)); }
TEST(Envelope, Sum) { expect_clean(oracle::sum_envelope(12, 60)); }
TEST(Envelope, CompositionSameVars) { expect_clean(oracle::composition_same_vars(13, 60)); }
TEST(Envelope, CompositionGeneral) { expect_clean(oracle::composition_general(14, 60)); }
TEST(Envelope, CompositionRational) { expect_clean(oracle::composition_rational(15, 40)); }
TEST(Envelope, PolynomialIterates) { expect_clean(oracle::polynomial_iterates(16, 40)); }
TEST(Envelope, RationalIterates) { expect_clean(oracle::rational_iterates(17, 30)); }
TEST(Envelope, Eliminant) { expect_clean(oracle::eliminant_envelope(18, 40)); }
TEST(Envelope, PointHeights) { expect_clean(oracle::point_height_envelope(19, 40)); }

// ---------------------------------------------------------------- eliminant

TEST(Eliminant, UnivariateExamples) {
  auto E = eliminant_univariate(P("x^2 - 1"));
  EXPECT_EQ(E.T, 2);
  EXPECT_EQ(E.poly, PU("u0^2 - u1^2", 2));

  E = eliminant_univariate(P("x^2"));
  EXPECT_EQ(E.T, 1);
  EXPECT_EQ(E.poly, PU("u0", 2));

  E = eliminant_univariate(P("2*x - 3"));
  EXPECT_EQ(E.T, 1);
  EXPECT_EQ(E.poly, PU("2*u0 + 3*u1", 2));
}

TEST(Eliminant, MacaulayExamples) {
  auto uni = eliminant_macaulay({P("x^2 - 1")}, 1);
  EXPECT_EQ(uni.T, 2);
  const auto ref = PU("u0^2 - u1^2", 2);
  EXPECT_TRUE(uni.poly == ref || uni.poly == ref.scaled(Integer(-1)));

  auto E = compute_eliminant(Ps({"x - 1", "y - 2"}, 2), 2);
  EXPECT_EQ(E.T, 1);
  EXPECT_EQ(E.poly, PU("u0 + u1 + 2*u2", 3));

  E = compute_eliminant(Ps({"x^2 - 1", "y"}, 2), 2);
  EXPECT_EQ(E.T, 2);
  EXPECT_EQ(E.poly, PU("u0^2 - u1^2", 3));
}

TEST(Eliminant, EmptyVarietyIsOne) {
  const auto E = compute_eliminant(Ps({"x^2 + 1", "x - 2"}, 1), 1);
  EXPECT_EQ(E.T, 0);
  EXPECT_TRUE(E.poly.is_constant());
  EXPECT_EQ(beta_certificate(E).beta, 1);
}

TEST(Eliminant, RootsAtInfinityRejected) {
  // x*y - 1 and x share no affine structure with a finite closure
  EXPECT_THROW(compute_eliminant(Ps({"x*y - 1", "x*y - 2*x"}, 2), 2), input_error);
}

TEST(Eliminant, BetaExamples) {
  auto b = beta_certificate(form("u0^2 - u1^2", 1, 2));
  EXPECT_EQ(b.beta0, 1);
  EXPECT_EQ(b.delta, PU("-4*u1^2", 2));
  EXPECT_EQ(b.beta, 4);

  b = beta_certificate(form("2*u0 + 3*u1", 1, 1));
  EXPECT_EQ(b.beta0, 2);
  EXPECT_EQ(b.beta, 2);

  b = beta_certificate(form("u0", 1, 1));
  EXPECT_EQ(b.beta, 1);
}

TEST(Eliminant, SquarefreeModP) {
  const auto E = form("u0^2 - u1^2", 1, 2);
  EXPECT_TRUE(verify_squarefree_mod_p(E, 3));
  EXPECT_FALSE(verify_squarefree_mod_p(E, 2));
  EXPECT_FALSE(verify_squarefree_mod_p(form("2*u0 + 3*u1", 1, 1), 2));
  EXPECT_THROW(verify_squarefree_mod_p(E, 4), input_error);
}

TEST(Eliminant, CountT) {
  EXPECT_EQ(count_T_from_eliminant(form("u0^2 - u1^2", 1, 2)), 2);
  EXPECT_EQ(count_T_from_eliminant(form("u0^2 + 2*u0*u1 + u1^2", 1, 2)), 1);
  EXPECT_EQ(count_T_from_eliminant(form("u0", 1, 1)), 1);
}

TEST(Eliminant, PointProductOracle) {
  // {(1,2), (-1,2), (3,-1)} on a triangular system
  const auto sys = Ps({"(x - 1)*(x + 1)*(x - 3)", "3*y + 3*x - 9"}, 2);
  const auto E = compute_eliminant(sys, 2);
  const auto Ep = eliminant_from_points({{1, 2}, {-1, 4}, {3, 0}}, 2);
  EXPECT_EQ(E.T, 3);
  EXPECT_EQ(E.poly, Ep.poly);
}

TEST(Eliminant, FixtureInvariants) {
  for (const auto& name : oracle::system_fixtures()) {
    const auto s = oracle::load_named(MODRED_FIXTURE_DIR, name);
    const auto E = compute_eliminant(s.polys, s.m);
    EXPECT_EQ(E.poly.degree_in(0), E.T) << name;
    const long d = oracle::max_degree(s.polys);
    std::vector<Integer> hs;
    for (const auto& f : s.polys) hs.push_back(max_abs_coeff(f));
    auto [Tb, hb] = eliminant_bounds(static_cast<long>(s.m), d, log_integer(oracle::max_of(hs)));
    EXPECT_LE(Integer(E.T), Tb) << name;
    if (E.T > 0) {
      EXPECT_LE(log_integer(max_abs_coeff(E.poly)), hb + kLogSlack) << name;
    }
    const auto b = beta_certificate(E);
    EXPECT_LE(log_integer(b.beta), beta_bound(static_cast<long>(s.m), d, log_integer(oracle::max_of(hs))) + kLogSlack)
        << name;
  }
}

TEST(Eliminant, SquarefreeAwayFromBeta) {
  std::vector<oracle::FixtureCertificate> certs;
  for (const auto& name : oracle::system_fixtures())
    certs.push_back(oracle::certify_fixture(oracle::load_named(MODRED_FIXTURE_DIR, name), 0, false));
  expect_clean(oracle::beta_behaviour(certs, 1000));
}

// ---------------------------------------------------------------- nullsatz

TEST(Nullsatz, WorkedExamples) {
  struct Case {
    std::vector<IntPoly> sys;
    long alpha;
  };
  const std::vector<Case> cases{{{P("x")}, 1}, {{P("x^2 - 1")}, 1}, {{P("x^2 + 1"), P("x - 2")}, 5}};
  for (const auto& c : cases) {
    const auto E = compute_eliminant(c.sys, 1);
    const auto cert = find_certificate(c.sys, 1, E);
    EXPECT_EQ(cert.alpha, c.alpha);
    EXPECT_EQ(cert.N, 1);
    EXPECT_TRUE(verify_certificate(c.sys, 1, E, cert));
  }
}

TEST(Nullsatz, TamperedCertificateFails) {
  const std::vector<IntPoly> sys{P("x^2 - 1")};
  const auto E = compute_eliminant(sys, 1);
  auto cert = find_certificate(sys, 1, E);
  cert.alpha += 1;
  EXPECT_FALSE(verify_certificate(sys, 1, E, cert));
}

TEST(Nullsatz, CombinedModulus) {
  NullsatzCertificate c;
  BetaCertificate b;
  c.alpha = 1, b.beta = 4;
  EXPECT_EQ(combined_modulus(c, b), 4);
  c.alpha = 5, b.beta = 1;
  EXPECT_EQ(combined_modulus(c, b), 5);
  c.alpha = 2, b.beta = 4;
  EXPECT_EQ(combined_modulus(c, b), 8);
}

TEST(Nullsatz, FixturesExpand) {
  for (const auto& name : oracle::system_fixtures()) {
    const auto c = oracle::certify_fixture(oracle::load_named(MODRED_FIXTURE_DIR, name), 0, false);
    EXPECT_TRUE(c.identity) << name;
    EXPECT_GE(c.alpha.alpha, 1) << name;
  }
}

// ---------------------------------------------------------------- badprimes

TEST(BadPrimes, ComputeTExamples) {
  auto r = compute_T({P("x^2 - 1")}, 1);
  EXPECT_EQ(r.T, 2);
  EXPECT_EQ(r.provenance, "univariate");
  EXPECT_EQ(compute_T({P("x^2 + 1"), P("x - 2")}, 1).T, 0);
  EXPECT_EQ(compute_T({P("x^2")}, 1).T, 1);
  EXPECT_EQ(compute_T(Ps({"x - 1", "y - 2"}, 2), 2).T, 1);
}

TEST(BadPrimes, ScanExamples) {
  auto rep = scan_bad_primes({P("x^2 + 1"), P("x - 2")}, 1, 0, 100);
  ASSERT_EQ(rep.deviants.size(), 1u);
  EXPECT_EQ(rep.deviants[0].p, 5u);
  ASSERT_TRUE(rep.certificate);
  EXPECT_EQ(rep.certificate->alpha, 5);
  EXPECT_EQ(rep.certificate->beta, 1);
  EXPECT_TRUE(rep.consistent);

  rep = scan_bad_primes({P("x^2 - 1")}, 1, 2, 100);
  ASSERT_EQ(rep.deviants.size(), 1u);
  EXPECT_EQ(rep.deviants[0].p, 2u);
  EXPECT_EQ(rep.certificate->beta, 4);

  rep = scan_bad_primes({P("x - 7")}, 1, 1, 100);
  EXPECT_TRUE(rep.deviants.empty());
  EXPECT_EQ(rep.primes_scanned, 25u);
}

TEST(BadPrimes, SoundnessOnFixtures) {
  std::vector<oracle::FixtureCertificate> certs;
  for (const auto& name : oracle::system_fixtures())
    certs.push_back(oracle::certify_fixture(oracle::load_named(MODRED_FIXTURE_DIR, name), 300));
  expect_clean(oracle::soundness(certs));
}

TEST(BadPrimes, ScanAgreesWithCertificateRoute) {
  for (const auto& name : oracle::system_fixtures()) {
    const auto s = oracle::load_named(MODRED_FIXTURE_DIR, name);
    const auto T = compute_T(s.polys, s.m).T;
    const auto rep = scan_bad_primes(s.polys, s.m, T, 200);
    EXPECT_TRUE(rep.consistent) << name;
    EXPECT_TRUE(rep.certificate.has_value()) << name;
    for (const auto& d : rep.deviants) EXPECT_TRUE(d.divides_modulus) << name << " p=" << d.p;
  }
}
