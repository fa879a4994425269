#include "facet/grid.hpp"

#include <algorithm>
#include <cmath>

namespace facet {

namespace {
template <class Op>
void for_interior(const Field& f, Op&& op) {
  int n = f.grid.n;
  if (f.grid.dim == 1) {
    for (int i = 1; i <= n; ++i) op(f.a[std::size_t(i)]);
  } else {
    int stride = n + 2;
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) op(f.a[std::size_t(j) * stride + i]);
  }
}
} // namespace

double field_mean(const Field& f) {
  double s = 0.0;
  for_interior(f, [&](double v) { s += v; });
  return s / double(f.grid.nodes());
}

double field_min(const Field& f) {
  double m = f.grid.dim == 1 ? f.at1(1) : f.at2(1, 1);
  for_interior(f, [&](double v) { m = std::min(m, v); });
  return m;
}

double field_max(const Field& f) {
  double m = f.grid.dim == 1 ? f.at1(1) : f.at2(1, 1);
  for_interior(f, [&](double v) { m = std::max(m, v); });
  return m;
}

double field_max_diff(const Field& f, const Field& g) {
  double m = 0.0;
  int n = f.grid.n;
  if (f.grid.dim == 1) {
    for (int i = 1; i <= n; ++i)
      m = std::max(m, std::abs(f.at1(i) - g.at1(i)));
  } else {
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i)
        m = std::max(m, std::abs(f.at2(i, j) - g.at2(i, j)));
  }
  return m;
}

} // namespace facet
