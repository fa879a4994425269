#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facet/effective.hpp"
#include "facet/hamiltonian.hpp"

namespace facet {

// Time-dependent solvers on the unit torus (one space dimension): the
// oscillatory equation u_t + H(x/eps, Du) = 0 and the effective equation
// driven by an interpolated table.

struct InitialDatum {
  enum class Kind { constant, sine, cosine } kind = Kind::sine;
  double amplitude = 0.1;

  double operator()(double x) const;
  double lipschitz() const;
  std::string name() const;
};

struct EvolutionProblem {
  SupplyField sigma;
  KineticModel m;
  InitialDatum u0;
  double T = 0.5;
  double epsilon = 0.25; // must be 1/k for integer k

  void validate() const;
};

struct RegularityBudget {
  double l_time = 0.0;  // sigma_max * m(Lip[u0])
  double k_space = 0.0; // m^{-1}((sigma_max/sigma_min) m(Lip[u0]))
  bool finite = false;
};

RegularityBudget regularity_budget(const SupplyField& sigma,
                                   const KineticModel& m, double lip_u0);

/// Closed-form sub/supersolution envelopes u0(x) - sigma(x/eps) t and
/// u0(x) - sigma(x/eps) m0 t.
double envelope_lower(const EvolutionProblem& p, double x, double t);
double envelope_upper(const EvolutionProblem& p, double x, double t);

struct ProbeWindow {
  double x = 0.5, t = 1.0;
  std::vector<double> scales{0.1, 0.05, 0.025};
};

struct EvolutionResult {
  int n = 0;
  double h = 0.0;
  std::vector<double> snap_t;
  std::vector<std::vector<double>> snap_u; // interior nodes only, size n
  double max_slope = 0.0;         // max one-sided slope over snapshots
  double time_modulus = 0.0;      // max |u(t)-u(s)|_inf / |t-s| over snapshots
  double envelope_violation = 0.0; // worst one-sided envelope defect
  long steps = 0;
  // probe-window extrema per scale (set when a window was requested and
  // epsilon <= scale)
  std::vector<double> window_max, window_min;
  std::vector<bool> window_active;
};

EvolutionResult solve_hje(const EvolutionProblem& p, int n, double cfl,
                          const std::vector<double>& snap_times,
                          const ProbeWindow* window = nullptr);

struct EffectiveSolveError : std::runtime_error {
  double p_offending;
  EffectiveSolveError(double pv, const std::string& msg)
      : std::runtime_error(msg), p_offending(pv) {}
};

/// Same scheme with H(x,p) replaced by the interpolated table. Aborts with
/// EffectiveSolveError when the stencil leaves the table range or touches a
/// lattice cell with an uncertain verdict.
EvolutionResult solve_effective(const InitialDatum& u0, double T,
                                const EffectiveTable& table, int n, double cfl,
                                const std::vector<double>& snap_times,
                                double theta_hint = 0.0);

struct SweepOptions {
  int cells_per_period = 32;
  double cfl = 0.9;
  GridSpec cell_grid{1, 256};   // grid for the table's cell problems
  LadderOptions ladder;
  double table_spacing = 0.1;
  int jobs = 1;
  bool force = false;
};

struct SweepReport {
  bool refused = false;
  std::string refusal;
  bool assumption_full_solvability = false;
  bool assumption_lipschitz = false;
  RegularityBudget budget;
  std::vector<double> eps;
  std::vector<double> err; // e(eps) on common coarse nodes at T/2 and T
  bool decreasing = false;
  double ratio_last_first = 0.0;
  std::vector<double> max_slopes;     // per eps run
  std::vector<double> time_moduli;    // per eps run
  EffectiveTable table;
  bool table_partial_in_range = false;
};

/// e(eps) = max over common coarse nodes and t in {T/2, T} of
/// |u_eps - u_effective|; refuses unless one of the homogenization
/// assumptions holds (force overrides).
SweepReport epsilon_sweep(const SupplyField& sigma, const KineticModel& m,
                          const InitialDatum& u0, double T,
                          const std::vector<double>& eps_list,
                          const SweepOptions& opt);

struct GapReport {
  bool rejected = false;
  std::string reason;
  std::vector<double> scales;
  std::vector<double> upper, lower, gap; // per scale
  double gap_estimate = 0.0;             // smallest scale
  double envelope_bound = 0.0;           // (sigma_max m0 - sigma_min) t_probe
  double worst_envelope_violation = 0.0;
};

/// Relaxed-limit gap estimate at (x_probe, t_probe) over shrinking space-time
/// windows and epsilon caps. Requires sigma_max * m0 > sigma_min.
GapReport non_homog_gap(const SupplyField& sigma, const KineticModel& m,
                        const InitialDatum& u0, double T,
                        const std::vector<double>& eps_list,
                        const ProbeWindow& window, int cells_per_period = 32,
                        double cfl = 0.9, int min_cells = 1024);

} // namespace facet
