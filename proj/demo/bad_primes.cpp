// Certified bad primes of a small zero-dimensional system.
//
//   demo_bad_primes            uses {x^2 + y^2 - 5, x*y - 2}
//   demo_bad_primes file.sys   any system file

#include <fstream>
#include <iostream>
#include <sstream>

#include "modred/modred.hpp"

using namespace modred;

int main(int argc, char** argv) {
  std::string text = "vars x y\nF1 = x^2 + y^2 - 5\nF2 = x*y - 2\n";
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    const auto file = parse_system(text);
    const auto sys = as_polynomials(file);
    const std::size_t m = file.nvars();
    std::cout << format_system(file) << "\n";

    const auto E = compute_eliminant(sys, m);
    const auto beta = beta_certificate(E);
    const auto alpha = find_certificate(sys, m, E);
    std::vector<std::string> unames;
    for (std::size_t i = 0; i <= m; ++i) unames.push_back("U" + std::to_string(i));
    std::cout << "T      = " << E.T << "\n"
              << "E_V    = " << format_poly(E.poly, unames) << "\n"
              << "beta   = " << beta.beta << "\n"
              << "alpha  = " << alpha.alpha << " (N = " << alpha.N << ")\n"
              << "modulus alpha*beta = " << combined_modulus(alpha, beta) << "\n\n";

    const auto rep = scan_bad_primes(sys, m, E.T, 500);
    std::cout << "primes p <= 500 where the point count differs from T:\n";
    for (const auto& d : rep.deviants)
      std::cout << "  p = " << d.p << "  count = " << (d.count ? d.count->get_str() : "all") << "  divides modulus: "
                << (d.divides_modulus ? "yes" : "NO") << "\n";
    std::cout << (rep.consistent ? "every bad prime is certified\n" : "uncertified bad prime found\n");
    return rep.consistent ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
