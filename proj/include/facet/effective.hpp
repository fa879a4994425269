#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "facet/cell.hpp"

namespace facet {

enum class Verdict { in_d, not_in_d, uncertain };
const char* verdict_name(Verdict v);

struct LadderOptions {
  int n0 = 1;
  int n_max = 64;
  double stab_tol = 1e-6; // value-stabilization criterion between rungs
  DeltaSchedule schedule;
  SolveOptions solve;
  double sandwich_slack = 0.025;
  bool richardson = false;

  /// Verdict threshold: max(5 * solve.tol, 1e-3 * sigma_min).
  double class_threshold(double sigma_min) const;
};

struct EffectivePoint {
  std::array<double, 2> P{0.0, 0.0};
  double hbar_inf = 0.0;
  int n_star = 0;
  Verdict verdict = Verdict::uncertain;
  double margin = 0.0; // sigma_min - hbar_inf
  double grad_bound = 0.0;
  double alpha_n_star = 0.0;
  bool ladder_exhausted = false;
  std::vector<std::pair<int, double>> ladder; // (n, hbar_n) per rung
  double residual = 0.0;
  long total_sweeps = 0;
};

/// Doubling n-ladder for the generalized effective Hamiltonian. Stops when
/// the rung value has stabilized AND the corrector gradient plus |P| fits
/// under alpha_n (the modified branch was never touched); otherwise runs to
/// n_max and classifies conservatively.
EffectivePoint effective_hamiltonian(const Hamiltonian& h,
                                     std::array<double, 2> P, GridSpec grid,
                                     const LadderOptions& opt);

struct LatticeSpec {
  double radius = 1.5;
  double spacing = 0.1;
};

struct EffectiveTable {
  int dim = 1;
  LatticeSpec lattice;
  std::vector<EffectivePoint> points; // 1D: ascending in P
  bool partial = false;               // any uncertain verdict present

  /// Linear interpolation of hbar_inf at p (1D tables). Throws
  /// std::out_of_range outside the lattice radius.
  double value_at(double p) const;
  /// True when p falls in a lattice cell with an uncertain endpoint.
  bool near_uncertain(double p) const;
  const EffectivePoint* find(double p) const;
};

EffectiveTable build_table(const Hamiltonian& h, LatticeSpec lattice,
                           GridSpec grid, const LadderOptions& opt,
                           int jobs = 1);

/// Radius of the guaranteed-solvable ball (sigma_min - sigma_max m0) /
/// (sigma_max L); 0 when the regime precondition fails.
double ball_in_d(const Hamiltonian& h);

/// Grid-scan sufficient condition for full solvability: the regime allows
/// solutions and the set where sigma exceeds its minimum is compactly
/// contained in the open unit cell.
bool sufficient_condition_full_solvability(const Hamiltonian& h,
                                           int scan_n = 8192);

void write_table_csv(const EffectiveTable& t, std::ostream& os);

struct InvariantReport {
  std::string name;
  bool ok = true;
  double slack = 0.0; // measured worst violation (<= 0 when ok)
  std::string detail;
};

/// Symmetry, discrete Lipschitz bound, sandwich bounds, and ray monotonicity
/// checks on a built table.
std::vector<InvariantReport> check_table_invariants(const EffectiveTable& t,
                                                    const Hamiltonian& h,
                                                    double tol);

} // namespace facet
