#pragma once

#include "facet/kinetic.hpp"
#include "facet/supply.hpp"

namespace facet {

/// H(x,p) = sigma(x) m(|p|). Non-coercive: H < sigma_max everywhere.
struct Hamiltonian {
  SupplyField sigma;
  KineticModel m;

  double operator()(double x, double p) const {
    return sigma(x) * m(p < 0 ? -p : p);
  }
  double operator()(double x, double y, double px, double py) const;

  /// Lipschitz constant of H in p; also the Lax-Friedrichs viscosity.
  double theta() const { return sigma.sigma_max() * m.lipschitz(); }
  int dim() const { return sigma.dim(); }
};

enum class Regime { solvable_possible, empty_d, boundary };

/// Trichotomy on sigma_max * m(0) vs sigma_min, tolerance 1e-12. When the
/// product exceeds sigma_min no cell problem is solvable for any P.
Regime check_regime(const Hamiltonian& h);

const char* regime_name(Regime r);

} // namespace facet
