#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crosshull/relaxation.hpp"

namespace crosshull::relax {

// Nodes of one color only read nodes of the other color, so rows can be
// distributed freely; the max-reduction is order independent.
double sweep_openmp(const Stencil& s, std::span<double> u, int color, double omega) {
  double worst = 0.0;
  double* data = u.data();
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (int j = 1; j < s.ny - 1; ++j) {
    for (int i = 1 + ((j + 1 + color) & 1); i < s.nx - 1; i += 2) {
      const std::size_t p = s.index(i, j);
      if (!s.unknown[p]) continue;
      const auto& w = s.rows[p];
      const double target = w.rhs + w.east * data[p + 1] + w.west * data[p - 1] +
                            w.north * data[p + s.nx] + w.south * data[p - s.nx];
      const double delta = omega * (target - data[p]);
      data[p] += delta;
      worst = std::max(worst, std::abs(delta));
    }
  }
  return worst;
}

int openmp_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace crosshull::relax
