// helpers.hpp -- shared utilities for the test suite (seeded RNG, random states).
#pragma once

#include <random>

#include "dualrail/channels.hpp"
#include "dualrail/state.hpp"

namespace testutil {

using dualrail::Complex;
using dualrail::Matrix;
using dualrail::Vector;

inline Matrix random_complex(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline dualrail::DensityMatrix random_density(const dualrail::HilbertLayout& lay, std::mt19937& rng) {
  Matrix g = random_complex(lay.dim(), lay.dim(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return dualrail::DensityMatrix(lay, rho);
}

inline dualrail::Ket random_ket(const dualrail::HilbertLayout& lay, std::mt19937& rng) {
  Vector v = random_complex(lay.dim(), 1, rng).col(0);
  dualrail::Ket k(lay, v);
  k.normalize();
  return k;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Distance up to a global phase, minimized analytically via the overlap trace.
inline double phase_free_distance(const Matrix& a, const Matrix& b) {
  const Complex tr = (b.adjoint() * a).trace();
  const Complex phase = (std::abs(tr) > 1e-14) ? tr / std::abs(tr) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
