// Periodic points of X -> X^d over finite fields: d^k points for every
// prime p not dividing d^k - 1, fewer at the others.

#include <iostream>

#include "modred/modred.hpp"

using namespace modred;

int main() {
  const long d = 2, k = 3;
  const auto s = DynSystem::from_polys({IntPoly::variable(1, 0).pow(d)});
  const Integer bad = ipow(Integer(d), k) - 1;
  std::cout << "X -> X^" << d << ", period " << k << ", expected " << ipow(Integer(d), k) << " points\n";
  for (auto p : primes_up_to(40)) {
    const auto n = count_periodic_points(s, k, p, static_cast<unsigned>(ipow(Integer(d), k).get_ui()));
    std::cout << "  p = " << p << "  count = " << n << (divides(p, bad) ? "   (p divides d^k - 1)" : "") << "\n";
  }

  // the same count by brute force over F_{5^2}, with the orbit of one point
  const auto r = periodic_points(s, 2, 5, 2);
  std::cout << "\nX^2, k = 2 over F_5bar: " << r.points.total() << " points, routes "
            << (r.routes_agree && *r.routes_agree ? "agree" : "were not compared") << "\n";
  const FqTower F(5, 2);
  const auto orb = orbit(ReducedSystem(s, F), {F.generator()}, 100);
  std::cout << "orbit of the class of x in F_25: tail " << orb.tail_length << ", cycle " << orb.cycle_length << "\n";
  return 0;
}
