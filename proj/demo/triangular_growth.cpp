// Degree growth of iterates: triangular systems stay polynomial in k, a
// generic quadratic map doubles every step.

#include <cstdio>

#include "modred/modred.hpp"

using namespace modred;

int main() {
  const auto tri = gen_triangular(3, {{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}, 3);
  std::printf("triangular system:\n");
  for (const auto& f : tri.functions) std::printf("  %s\n", format_poly(f.num()).c_str());
  const auto g = growth_fit(tri, 12, 6);
  std::printf("\n  k  deg F1  deg F2  deg F3\n");
  for (long k = 1; k <= 12; ++k)
    std::printf("%3ld  %6ld  %6ld  %6ld\n", k, g.degrees[0][k - 1], g.degrees[1][k - 1], g.degrees[2][k - 1]);
  std::printf("fitted exponents over k = 6..12: %.2f %.2f %.2f\n", g.degree_exponent[0], g.degree_exponent[1],
              g.degree_exponent[2]);

  const auto generic = DynSystem::from_polys(
      {IntPoly::from_terms(2, {{{2, 0}, Integer(1)}, {{1, 1}, Integer(2)}, {{0, 1}, Integer(1)}}),
       IntPoly::from_terms(2, {{{0, 2}, Integer(3)}, {{1, 0}, Integer(1)}, {{0, 0}, Integer(1)}})});
  std::printf("\ngeneric quadratic map:\n  k  deg F1\n");
  const auto its = iterates(generic, 6);
  for (long k = 1; k <= 6; ++k) std::printf("%3ld  %6ld\n", k, static_cast<long>(its[k - 1].functions[0].num().degree()));
  return 0;
}
