// hamiltonians.hpp -- Hamiltonian builders for beamsplitter, conditional beamsplitter,
// dispersive coupling, and the g-f sideband drive. All in the rotating frame, rad/us.
#pragma once

#include <stdexcept>
#include <variant>

#include "dualrail/device_params.hpp"
#include "dualrail/operators.hpp"

namespace dualrail::dynamics {

using dualrail::embed;
using dualrail::HilbertLayout;
using dualrail::Matrix;
using dualrail::Operator;

// (g/2)(a b+ e^{-i phi} + a+ b e^{+i phi}) + delta a+a on the two cavity modes.
inline Operator build_beamsplitter(const HilbertLayout& lay, double g, double phi, double delta,
                                   int mode_a = 0, int mode_b = 1) {
  using dualrail::annihilation;
  using dualrail::creation;
  using dualrail::number_op;
  const Matrix a = embed(lay, mode_a, annihilation(lay.dim(mode_a))).mat;
  const Matrix b = embed(lay, mode_b, annihilation(lay.dim(mode_b))).mat;
  const std::complex<double> ph = std::exp(std::complex<double>(0.0, phi));
  Matrix h = 0.5 * g * (a * b.adjoint() * std::conj(ph) + a.adjoint() * b * ph);
  h += delta * embed(lay, mode_a, number_op(lay.dim(mode_a))).mat;
  return Operator{lay, h};
}

// Beamsplitter plus the dispersive pull chi n_a |f><f| that conditions the hop
// phase on the transmon state. delta defaults to the -chi/2 operating point.
inline Operator build_conditional_bs(const HilbertLayout& lay, const DeviceParams& p,
                                     int mode_a = 0, int mode_b = 1, int mode_q = 2) {
  if (lay.dim(mode_q) < 3)
    throw std::invalid_argument("build_conditional_bs: transmon mode needs |f> level");
  Operator h = build_beamsplitter(lay, p.g_bs, 0.0, p.jp_delta(), mode_a, mode_b);
  const Matrix na = embed(lay, mode_a, dualrail::number_op(lay.dim(mode_a))).mat;
  const Matrix pf = embed(lay, mode_q, dualrail::basis_op(lay.dim(mode_q), 2, 2)).mat;
  h.mat += p.chi_gf * na * pf;
  return h;
}

// chi n_cav |level><level|, the dispersive wait used by the parity map.
inline Operator build_dispersive(const HilbertLayout& lay, double chi, int level,
                                 int mode_cav = 0, int mode_q = 1) {
  if (level < 0 || level >= lay.dim(mode_q))
    throw std::out_of_range("build_dispersive: level outside transmon dimension");
  const Matrix n = embed(lay, mode_cav, dualrail::number_op(lay.dim(mode_cav))).mat;
  const Matrix pl = embed(lay, mode_q, dualrail::basis_op(lay.dim(mode_q), level, level)).mat;
  return Operator{lay, chi * n * pl};
}

// (Omega/2)(a+ |g><f| + a |f><g|), the photon-pump sideband. A pi pulse takes
// |0,f> to -i|1,g>.
inline Operator build_sideband(const HilbertLayout& lay, double Omega,
                               int mode_cav = 0, int mode_q = 1) {
  if (lay.dim(mode_q) < 3)
    throw std::invalid_argument("build_sideband: transmon mode needs |f> level");
  const Matrix adag = embed(lay, mode_cav, dualrail::creation(lay.dim(mode_cav))).mat;
  const Matrix gf = embed(lay, mode_q, dualrail::basis_op(lay.dim(mode_q), 0, 2)).mat;
  const Matrix half = 0.5 * Omega * adag * gf;
  return Operator{lay, half + half.adjoint()};
}

// ---- declarative spec, for configs that name a Hamiltonian ----

struct BeamsplitterSpec {
  double g = 0.0;
  double phi = 0.0;
  double delta = 0.0;
};
struct ConditionalBsSpec {};   // parameters come from DeviceParams
struct SidebandSpec {
  double Omega = 20.0 * M_PI;  // Omega/2pi = 10 MHz
};

using HamiltonianSpec = std::variant<BeamsplitterSpec, ConditionalBsSpec, SidebandSpec>;

inline Operator build_hamiltonian(const HilbertLayout& lay, const DeviceParams& p,
                                  const HamiltonianSpec& spec) {
  if (const auto* bs = std::get_if<BeamsplitterSpec>(&spec))
    return build_beamsplitter(lay, bs->g, bs->phi, bs->delta);
  if (std::get_if<ConditionalBsSpec>(&spec)) return build_conditional_bs(lay, p);
  const auto& sb = std::get<SidebandSpec>(spec);
  return build_sideband(lay, sb.Omega);
}

}  // namespace dualrail::dynamics
