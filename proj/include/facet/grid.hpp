#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace facet {

/// Uniform periodic grid on the unit torus, nodes x_i = i/n.
struct GridSpec {
  int dim = 1;
  int n = 256; // points per axis

  double h() const { return 1.0 / n; }
  std::size_t nodes() const {
    return dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n);
  }
  /// Length of the ghost-padded storage used by the sweep kernels.
  std::size_t padded() const {
    return dim == 1 ? std::size_t(n) + 2
                    : (std::size_t(n) + 2) * (std::size_t(n) + 2);
  }
  void validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("grid dim must be 1 or 2");
    if (n < 16) throw std::invalid_argument("grid needs at least 16 points per axis");
  }
};

/// Padded grid function. Interior indices run 1..n per axis; ghost layer of
/// width one carries the periodic images.
struct Field {
  GridSpec grid;
  std::vector<double> a;

  explicit Field(GridSpec g, double fill = 0.0) : grid(g), a(g.padded(), fill) {}
  Field() = default;

  double& at1(int i) { return a[std::size_t(i)]; }                 // 1D, i in 1..n
  double at1(int i) const { return a[std::size_t(i)]; }
  double& at2(int ix, int iy) { return a[std::size_t(iy) * (grid.n + 2) + ix]; }
  double at2(int ix, int iy) const { return a[std::size_t(iy) * (grid.n + 2) + ix]; }
};

double field_mean(const Field& f);
double field_min(const Field& f);
double field_max(const Field& f);
/// Max over interior nodes of |f - g|.
double field_max_diff(const Field& f, const Field& g);

} // namespace facet
