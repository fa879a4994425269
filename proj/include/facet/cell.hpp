#pragma once

#include <array>
#include <optional>
#include <vector>

#include "facet/grid.hpp"
#include "facet/hamiltonian.hpp"
#include "facet/kernels.hpp"

namespace facet {

/// Grid-sampled data for one cell problem: sigma at the nodes, the kinetic
/// spec (optionally capped to the coercive surrogate), and the shift P.
struct CellDiscretization {
  GridSpec grid;
  Field sig;
  double theta = 0.0;
  kernels::KineticSpec mspec;
  std::array<double, 2> P{0.0, 0.0};

  double pnorm() const;
};

CellDiscretization discretize(const Hamiltonian& h, std::array<double, 2> P,
                              GridSpec grid,
                              const Approximant* apx = nullptr);

struct SolveOptions {
  double tol = 1e-8;          // stop when max|du|/dt drops below this
  long max_sweeps = 20000000;
  double cfl_safety = 1.0;    // scales dt below the monotonicity bound
};

SolveOptions default_solve_options(int dim);

struct DiscountedSolution {
  Field u;
  double delta = 0.0;
  double update_rate = 0.0;
  long sweeps = 0;
  bool converged = false;
  double hbar = 0.0;     // mean of -delta u
  double spread = 0.0;   // max - min of -delta u
  double residual = 0.0; // max |Hhat_i - hbar|
};

/// Discounted problem delta*u + H(x, Du + P) = 0 by explicit pseudo-time
/// iteration under dt <= h / (2 theta N + delta h). The grid mean, whose
/// plain relaxation rate is only delta*dt per sweep, is slaved to its
/// equilibrium -mean(Hhat)/delta each sweep; the fixed point is unchanged.
DiscountedSolution solve_discounted(const CellDiscretization& d, double delta,
                                    const SolveOptions& opt,
                                    const Field* warm_start = nullptr);

/// Mean of -delta u and its spread over the grid.
std::pair<double, double> extract_critical(const Field& u, double delta);

struct DeltaSchedule {
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
};

struct CellSolution {
  Field u;                 // corrector, normalized min u = 0
  double hbar_n = 0.0;
  double grad_bound = 0.0; // max one-sided difference magnitude of u + <P,x>
  double residual = 0.0;
  double delta_used = 0.0;
  int n = 0;
  double alpha_n = 0.0;
  double spread = 0.0;
  bool converged = true;
  long total_sweeps = 0;
  bool sandwich_ok = true;
  double sandwich_lo = 0.0, sandwich_hi = 0.0;
};

/// Runs solve_discounted down the schedule with warm starts and extracts the
/// critical value estimate at the smallest delta. `sandwich_slack` is the
/// scheme-bias allowance for the a-posteriori bound check
/// sigma_min M_n(|P|) <= hbar <= sigma_max M_n(|P|).
CellSolution solve_cell(const Hamiltonian& h, std::array<double, 2> P, int n,
                        GridSpec grid, const DeltaSchedule& sched,
                        const SolveOptions& opt, double sandwich_slack = 0.025,
                        const Field* warm_start = nullptr,
                        bool richardson = false);

/// Max over nodes and directions of |D(u + <P,x>)| by one-sided differences.
double gradient_bound(const Field& u, std::array<double, 2> P);

} // namespace facet
