// logical.hpp -- the dual-rail code: one photon shared between two cavities.
//
// Logical basis: |0>_L = |0_a 1_b>, |1>_L = |1_a 0_b>, so +Z means the photon
// sits in rail b. A beamsplitter pulse of area theta and phase phi acts on the
// code space as the Bloch rotation exp[-i (theta/2)(cos phi X + sin phi Y)].
#pragma once

#include <cmath>
#include <stdexcept>

#include "dualrail/evolve.hpp"
#include "dualrail/hamiltonians.hpp"
#include "dualrail/operators.hpp"
#include "dualrail/state.hpp"

namespace dualrail::logical {

using dualrail::Complex;
using dualrail::DensityMatrix;
using dualrail::HilbertLayout;
using dualrail::Ket;
using dualrail::Matrix;
using dualrail::Operator;

namespace detail {

// Basis indices of |01> and |10> with every other mode in its ground state.
inline std::pair<int, int> code_indices(const HilbertLayout& lay, int mode_a, int mode_b) {
  std::vector<int> occ(lay.modes(), 0);
  occ[mode_a] = 0;
  occ[mode_b] = 1;
  const int i0 = lay.index(occ);
  occ[mode_a] = 1;
  occ[mode_b] = 0;
  const int i1 = lay.index(occ);
  return {i0, i1};
}

}  // namespace detail

inline Ket encode(const HilbertLayout& lay, Complex u, Complex v, int mode_a = 0, int mode_b = 1) {
  const double n = std::sqrt(std::norm(u) + std::norm(v));
  if (n == 0.0) throw std::invalid_argument("encode: zero amplitude pair");
  auto [i0, i1] = detail::code_indices(lay, mode_a, mode_b);
  dualrail::Vector psi = dualrail::Vector::Zero(lay.dim());
  psi(i0) = u / n;
  psi(i1) = v / n;
  return Ket{lay, psi};
}

inline Operator code_projector(const HilbertLayout& lay, int mode_a = 0, int mode_b = 1) {
  auto [i0, i1] = detail::code_indices(lay, mode_a, mode_b);
  Matrix p = Matrix::Zero(lay.dim(), lay.dim());
  p(i0, i0) = 1.0;
  p(i1, i1) = 1.0;
  return Operator{lay, p};
}

inline Operator logical_z(const HilbertLayout& lay, int mode_a = 0, int mode_b = 1) {
  auto [i0, i1] = detail::code_indices(lay, mode_a, mode_b);
  Matrix m = Matrix::Zero(lay.dim(), lay.dim());
  m(i0, i0) = 1.0;
  m(i1, i1) = -1.0;
  return Operator{lay, m};
}

inline Operator logical_x(const HilbertLayout& lay, int mode_a = 0, int mode_b = 1) {
  auto [i0, i1] = detail::code_indices(lay, mode_a, mode_b);
  Matrix m = Matrix::Zero(lay.dim(), lay.dim());
  m(i0, i1) = 1.0;
  m(i1, i0) = 1.0;
  return Operator{lay, m};
}

inline Operator logical_y(const HilbertLayout& lay, int mode_a = 0, int mode_b = 1) {
  auto [i0, i1] = detail::code_indices(lay, mode_a, mode_b);
  Matrix m = Matrix::Zero(lay.dim(), lay.dim());
  m(i0, i1) = Complex(0.0, -1.0);
  m(i1, i0) = Complex(0.0, 1.0);
  return Operator{lay, m};
}

// The physical single-qubit gate: a beamsplitter pulse. The returned unitary
// covers the whole space, so leaked states keep evolving realistically.
inline Operator logical_rotation(const HilbertLayout& lay, double theta, double phi,
                                 int mode_a = 0, int mode_b = 1) {
  using dualrail::dynamics::build_beamsplitter;
  using dualrail::dynamics::propagator;
  Operator h = build_beamsplitter(lay, 1.0, phi, 0.0, mode_a, mode_b);
  return Operator{lay, propagator(h, theta)};
}

// ---- leakage bookkeeping ----

// Where a state has fallen relative to the code. One photon across the rails
// is the code space; zero photons is the (parity-detectable) vacuum; other
// even totals are also caught by a parity check; odd totals above one are not.
enum class SectorClass { codespace, vacuum, even_leak, odd_leak };

inline SectorClass classify_total_photons(int n_total) {
  if (n_total < 0) throw std::invalid_argument("classify_total_photons: negative count");
  if (n_total == 1) return SectorClass::codespace;
  if (n_total == 0) return SectorClass::vacuum;
  return (n_total % 2 == 0) ? SectorClass::even_leak : SectorClass::odd_leak;
}

inline SectorClass classify_leakage(const HilbertLayout& lay, int basis_index, int mode_a = 0,
                                    int mode_b = 1) {
  return classify_total_photons(lay.occupation(basis_index, mode_a) +
                                lay.occupation(basis_index, mode_b));
}

struct SectorPopulations {
  double codespace = 0.0;
  double vacuum = 0.0;
  double even_leak = 0.0;
  double odd_leak = 0.0;
};

inline SectorPopulations sector_populations(const DensityMatrix& rho, int mode_a = 0,
                                            int mode_b = 1) {
  SectorPopulations out;
  for (int i = 0; i < rho.layout.dim(); ++i) {
    const double p = std::real(rho.mat(i, i));
    switch (classify_leakage(rho.layout, i, mode_a, mode_b)) {
      case SectorClass::codespace: out.codespace += p; break;
      case SectorClass::vacuum: out.vacuum += p; break;
      case SectorClass::even_leak: out.even_leak += p; break;
      case SectorClass::odd_leak: out.odd_leak += p; break;
    }
  }
  return out;
}

// ---- logical Bloch vector ----

struct PauliExpectations {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Bloch components of the state conditioned on remaining in the code space.
inline PauliExpectations logical_expectations(const DensityMatrix& rho, int mode_a = 0,
                                              int mode_b = 1) {
  auto [i0, i1] = detail::code_indices(rho.layout, mode_a, mode_b);
  const double p00 = std::real(rho.mat(i0, i0));
  const double p11 = std::real(rho.mat(i1, i1));
  const Complex c = rho.mat(i0, i1);
  const double w = p00 + p11;
  if (w <= 0.0) throw std::runtime_error("logical_expectations: no code-space weight");
  PauliExpectations out;
  out.x = 2.0 * std::real(c) / w;
  out.y = -2.0 * std::imag(c) / w;
  out.z = (p00 - p11) / w;
  return out;
}

}  // namespace dualrail::logical
