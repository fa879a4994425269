#include "facet/hamiltonian.hpp"

#include <cmath>

namespace facet {

double Hamiltonian::operator()(double x, double y, double px,
                               double py) const {
  return sigma(x, y) * m(std::hypot(px, py));
}

Regime check_regime(const Hamiltonian& h) {
  double lhs = h.sigma.sigma_max() * h.m.m0();
  double rhs = h.sigma.sigma_min();
  if (std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs)) return Regime::boundary;
  return lhs > rhs ? Regime::empty_d : Regime::solvable_possible;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::solvable_possible: return "solvable-possible";
    case Regime::empty_d: return "empty-D";
    case Regime::boundary: return "boundary";
  }
  return "?";
}

} // namespace facet
