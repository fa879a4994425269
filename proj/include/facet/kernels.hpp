#pragma once

#include <cstddef>

namespace facet::kernels {

// Lax-Friedrichs sweep kernels. One sweep applies
//
//   unew_i = u_i - dt * ( delta * u_i + Hhat_i(u) )
//   Hhat_i = sigma_i * M(|(D- + D+)/2 + P|) - (theta/2) * sum_d (D+_d - D-_d)
//
// on ghost-padded arrays (interior 1..n per axis, ghosts filled by the
// caller). The scalar backend is the reference; the simd backend must agree
// with it to rounding noise and is checked by the equivalence tests.

enum class Backend { scalar, simd };

bool simd_supported();
Backend active_backend();
void set_backend(Backend b);
const char* backend_name(Backend b);

/// Kinetic coefficient as seen by the inner loop: a preset formula, an
/// optional coercive cap max(m, L r - n), or a sampled table (scalar only).
struct KineticSpec {
  enum class Kind { rational, tanh_sat, sampled } kind = Kind::tanh_sat;
  double L = 0.5;
  bool capped = false;
  double cap_n = 0.0;
  const double* tab_r = nullptr; // sampled m: strictly increasing radii
  const double* tab_m = nullptr;
  int tab_len = 0;
};

double kinetic_eval(const KineticSpec& m, double r);

struct SweepParams {
  double h = 0.0;
  double dt = 0.0;
  double delta = 0.0; // 0 for plain time stepping
  double theta = 0.0;
  double Px = 0.0, Py = 0.0;
  KineticSpec m;
};

struct SweepStats {
  double sum_h = 0.0;   // numerical Hamiltonian over interior nodes
  double min_h = 0.0;
  double max_h = 0.0;
  double sum_unew = 0.0;
  double min_unew = 0.0;
  double max_unew = 0.0;
  double min_du = 0.0;  // extrema of unew - u
  double max_du = 0.0;
};

void fill_ghost_1d(double* a, int n);
void fill_ghost_2d(double* a, int n);

SweepStats lf_sweep_1d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);
SweepStats lf_sweep_2d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);

/// Sweep for a Hamiltonian tabulated in p on a uniform grid [p0, p0+(len-1)dp]
/// (the effective equation). Scalar only. Sets *out_of_range if the stencil
/// ever samples outside the table.
SweepStats lf_sweep_tab_1d(const double* u, double* unew, int n, double h,
                           double dt, double theta, const double* hbar,
                           double p0, double dp, int len, bool* out_of_range,
                           double* min_p_seen, double* max_p_seen);

namespace scalar {
SweepStats lf_sweep_1d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);
SweepStats lf_sweep_2d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);
} // namespace scalar

#ifdef FACET_WITH_AVX2
namespace simd {
SweepStats lf_sweep_1d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);
SweepStats lf_sweep_2d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p);
} // namespace simd
#endif

} // namespace facet::kernels
