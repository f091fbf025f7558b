// sideband.hpp -- loading one photon into a rail through the transmon.
//
// The rail starts empty. Two pi pulses walk the transmon g -> e -> f, then a
// g-f sideband drive swaps the f excitation into the cavity, ending at
// |1> x |g> after half a sideband period. A transmon decay midway strands
// the system in vacuum, which a later photon-number check flags, so the
// preparation error converts to erasure instead of logical noise.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dualrail/collapse.hpp"
#include "dualrail/device_params.hpp"
#include "dualrail/evolve.hpp"
#include "dualrail/hamiltonians.hpp"
#include "dualrail/readout.hpp"

namespace dualrail::protocols {

inline HilbertLayout sideband_layout() { return HilbertLayout({3, 3}); }

namespace detail {

// cavity + transmon noise during the sideband drive
inline std::vector<Matrix> sideband_collapse_ops(const HilbertLayout& lay,
                                                 const dynamics::DeviceParams& p) {
  const int dc = lay.dim(0), dq = lay.dim(1);
  auto emb = [&](int mode, double pref, const Matrix& op) {
    return dynamics::detail::scaled_embed(lay, mode, pref, op);
  };
  return {
      emb(0, p.kappa_a * (1.0 + p.n_th), annihilation(dc)),
      emb(0, p.kappa_a * p.n_th, creation(dc)),
      emb(0, 2.0 * p.gamma_phi_a, number_op(dc)),
      emb(1, p.Gamma_down_ge, basis_op(dq, 0, 1)),
      emb(1, p.Gamma_up_ge, basis_op(dq, 1, 0)),
      emb(1, p.Gamma_down_ef, basis_op(dq, 1, 2)),
      emb(1, p.Gamma_up_ef, basis_op(dq, 2, 1)),
      emb(1, 2.0 * p.Gamma_phi_ff, basis_op(dq, 2, 2)),
  };
}

}  // namespace detail

// First-order estimate of the vacuum-branch probability: transmon decay out
// of f (average f population one half over the drive) or loss of the newly
// created photon (average photon number one half).
inline double sideband_vacuum_estimate(const dynamics::DeviceParams& p, double omega) {
  const double t = M_PI / omega;
  return 0.5 * (p.Gamma_down_ef + p.kappa_a) * t;
}

// Runs the preparation from |0> x |g> and splits the result by final cavity
// photon number: "prepared" (one photon), "vacuum" (erasure, detectable by a
// photon-number check), "leak" (more than one photon).
inline std::vector<OutcomeBranch> sideband_prepare(const dynamics::DeviceParams& p, GateMode mode,
                                                   double omega = 20.0 * M_PI) {
  if (omega <= 0.0) throw std::invalid_argument("sideband_prepare: omega must be positive");
  const HilbertLayout lay = sideband_layout();
  const int dq = lay.dim(1);

  DensityMatrix rho = DensityMatrix::pure(basis_ket(lay, {0, 0}));
  auto conjugate = [&rho](const Matrix& u) {
    rho.mat = (u * rho.mat * u.adjoint()).eval();
  };
  conjugate(embed(lay, 1, subspace_rotation(dq, 0, 1, M_PI, 0.0)).mat);
  conjugate(embed(lay, 1, subspace_rotation(dq, 1, 2, M_PI, 0.0)).mat);

  const Operator h = dynamics::build_sideband(lay, omega, 0, 1);
  const double t = M_PI / omega;
  if (mode == GateMode::ideal) {
    rho = dynamics::evolve_unitary(rho, h, t);
  } else {
    rho = dynamics::evolve_lindblad(rho, h, detail::sideband_collapse_ops(lay, p), t);
  }

  auto number_branch = [&](const char* label, int n_lo, int n_hi) {
    Matrix proj = Matrix::Zero(lay.dim(), lay.dim());
    for (int k = 0; k < lay.dim(); ++k) {
      const int n = lay.occupation(k, 0);
      if (n >= n_lo && n <= n_hi) proj(k, k) = 1.0;
    }
    return detail::make_branch(label, lay, proj * rho.mat * proj);
  };
  return {number_branch("prepared", 1, 1), number_branch("vacuum", 0, 0),
          number_branch("leak", 2, lay.dim(0) - 1)};
}

}  // namespace dualrail::protocols
