// zz_gate.hpp -- entangling ZZ(theta) between two dual-rail qubits.
//
// Two joint-parity gates sandwich a gf rotation of angle theta. The transmon
// starts and ends in g on the codespace; the sign of the phase it shepherds
// onto the cavities follows the joint parity, which is exactly ZZ(theta) in
// the logical basis. A five-mode variant swaps in the spectator rails
// between the two parity gates, turning the sequence into a leakage check
// that runs alongside the gate.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/joint_parity.hpp"

namespace dualrail::protocols {

// Codespace target on the ordered basis (00, 01, 10, 11), up to global phase.
inline Eigen::Matrix4cd zz_target(double theta) {
  Eigen::Matrix4cd z = Eigen::Matrix4cd::Zero();
  const Complex ph = std::exp(Complex(0.0, theta));
  z(0, 0) = 1.0;
  z(1, 1) = ph;
  z(2, 2) = ph;
  z(3, 3) = 1.0;
  return z;
}

namespace detail {

// the three transmon pulses of the sequence, in application order
struct ZzPulses {
  Matrix open;    // gf pi/2 about +Y
  Matrix rotate;  // gf theta about +X
  Matrix close;   // gf pi/2 about -Y
};

inline ZzPulses zz_pulses(const HilbertLayout& lay, double theta, int mode_q) {
  return {gf_pulse(lay, mode_q, M_PI / 2, M_PI / 2), gf_pulse(lay, mode_q, theta, 0.0),
          gf_pulse(lay, mode_q, M_PI / 2, -M_PI / 2)};
}

}  // namespace detail

// Full matrix of the closed-system sequence on rails + transmon,
// frame-aligned. Ideal mode composes the exact joint-parity unitaries;
// physical mode composes the conditional-beamsplitter periods.
inline Matrix zz_sequence_unitary(const HilbertLayout& lay, double theta,
                                  const dynamics::DeviceParams& p, GateMode mode) {
  if (lay.modes() != 3 || lay.dim(2) < 3)
    throw std::invalid_argument("zz_sequence_unitary: expected rails + three-level transmon");
  const auto pulses = detail::zz_pulses(lay, theta, 2);
  if (mode == GateMode::ideal) {
    const Matrix jp = u_jp_ideal(lay);
    return pulses.close * jp * pulses.rotate * jp * pulses.open;
  }
  const Matrix jp = u_jp_physical_unitary(lay, p);
  // both per-gate frame rotations commute through to the end
  const Matrix frame = frame_rotation(lay, {0, 1}, -2.0 * u_jp_frame_angle(p)).mat;
  return frame * pulses.close * jp * pulses.rotate * jp * pulses.open;
}

// Same sequence with a jump fired partway through the first joint-parity
// gate, for error-transparency checks.
inline Matrix zz_sequence_with_jump(const HilbertLayout& lay, double theta,
                                    const dynamics::DeviceParams& p, const Matrix& jump,
                                    double fraction) {
  if (lay.modes() != 3 || lay.dim(2) < 3)
    throw std::invalid_argument("zz_sequence_with_jump: expected rails + three-level transmon");
  const auto pulses = detail::zz_pulses(lay, theta, 2);
  const Matrix jp = u_jp_physical_unitary(lay, p);
  const Matrix jp_jumped = u_jp_unitary_with_jump(lay, p, jump, fraction);
  const Matrix frame = frame_rotation(lay, {0, 1}, -2.0 * u_jp_frame_angle(p)).mat;
  return frame * pulses.close * jp * pulses.rotate * jp_jumped * pulses.open;
}

// Density-matrix execution with the final transmon measurement. Outcome g is
// the gate's success branch, f flags leakage-induced failure, e flags a decay
// during one of the parity gates.
inline std::vector<OutcomeBranch> zz_gate(const DensityMatrix& rho, double theta,
                                          const dynamics::DeviceParams& p, GateMode mode,
                                          dynamics::ChannelCache& cache) {
  const HilbertLayout& lay = rho.layout;
  if (lay.modes() != 3 || lay.dim(2) < 3)
    throw std::invalid_argument("zz_gate: expected rails + three-level transmon");
  const auto pulses = detail::zz_pulses(lay, theta, 2);
  const Matrix& jp = u_jp_channel(lay, p, mode, cache);

  DensityMatrix work = rho;
  auto conjugate = [&work](const Matrix& u) {
    work.mat = (u * work.mat * u.adjoint()).eval();
  };
  conjugate(pulses.open);
  work = apply_superop(work, jp);
  conjugate(pulses.rotate);
  work = apply_superop(work, jp);
  conjugate(pulses.close);
  work.resymmetrize();

  const double eta_ge = mode == GateMode::ideal ? 0.0 : p.eta_ge;
  const double eta_gf = mode == GateMode::ideal ? 0.0 : p.eta_gf;
  return three_outcome_measure(work, eta_ge, eta_gf, 2);
}

// ---- checked variant over four cavities ----
//
// Mode order [r1, r2, transmon, s1, s2]: the r rails couple to the transmon,
// the s rails are spectators that get swapped in between the parity gates.
// On the codespace the sequence performs ZZ(theta) together with a known
// X(x)X byproduct from the uncompensated swaps; the transmon ends in f
// whenever the total photon number over all four rails started odd, which is
// exactly the single-leaked-rail signature.

inline HilbertLayout zz_checked_layout() { return HilbertLayout({3, 3, 3, 2, 2}); }

namespace detail {

// Spectator rails idle at their own loss, heating, and dephasing rates while
// the transmon works on the r rails.
inline const Matrix& spectator_idle_channel(const dynamics::DeviceParams& p,
                                            dynamics::ChannelCache& cache) {
  return cache.get("chk_spectator_idle", [&]() {
    const HilbertLayout one({2});
    std::vector<Matrix> cops = {
        std::sqrt(p.kappa_b * (1.0 + p.n_th)) * annihilation(2),
        std::sqrt(p.kappa_b * p.n_th) * creation(2),
        std::sqrt(2.0 * p.gamma_phi_b) * number_op(2),
    };
    return dynamics::lindblad_channel(Operator(one, Matrix::Zero(2, 2)), cops,
                                      p.jp_gate_time());
  });
}

}  // namespace detail

inline std::vector<OutcomeBranch> zz_gate_with_check(const DensityMatrix& rho, double theta,
                                                     const dynamics::DeviceParams& p,
                                                     GateMode mode,
                                                     dynamics::ChannelCache& cache) {
  const HilbertLayout& lay = rho.layout;
  if (lay.modes() != 5 || lay.dim(2) < 3)
    throw std::invalid_argument("zz_gate_with_check: expected [r1, r2, transmon, s1, s2]");

  // both rails doing the interacting work see the interacting-rail rates
  dynamics::DeviceParams p_int = p;
  p_int.kappa_b = p.kappa_a;
  p_int.gamma_phi_b = p.gamma_phi_a;

  const HilbertLayout sub({lay.dim(0), lay.dim(1), lay.dim(2)});
  const Matrix& jp_sub = u_jp_channel(sub, p_int, mode, cache, "chk_");
  const auto pulses = detail::zz_pulses(lay, theta, 2);
  const Matrix swap_1 = swap_modes(lay, 0, 3).mat;
  const Matrix swap_2 = swap_modes(lay, 1, 4).mat;

  DensityMatrix work = rho;
  auto conjugate = [&work](const Matrix& u) {
    work.mat = (u * work.mat * u.adjoint()).eval();
  };
  auto joint_parity = [&]() {
    work = apply_superop_range(work, jp_sub, 0, 3);
    if (mode == GateMode::physical) {
      const Matrix& idle = detail::spectator_idle_channel(p, cache);
      work = apply_superop_range(work, idle, 3, 1);
      work = apply_superop_range(work, idle, 4, 1);
    }
  };

  conjugate(pulses.open);
  joint_parity();
  conjugate(pulses.rotate);
  conjugate(swap_1);
  conjugate(swap_2);
  joint_parity();
  conjugate(pulses.close);
  work.resymmetrize();

  const double eta_ge = mode == GateMode::ideal ? 0.0 : p.eta_ge;
  const double eta_gf = mode == GateMode::ideal ? 0.0 : p.eta_gf;
  return three_outcome_measure(work, eta_ge, eta_gf, 2);
}

// ---- compilation helpers ----

// CZ as local Z rotations after ZZ(pi/2). The composed codespace matrix is
// diag(1, 1, 1, -1) up to global phase.
struct CompiledCz {
  double zz_theta = M_PI / 2;
  double local_z = -M_PI / 2;  // same angle on each qubit

  Eigen::Matrix4cd matrix() const {
    Eigen::Matrix4cd local = Eigen::Matrix4cd::Zero();
    const Complex zm = std::exp(Complex(0.0, -local_z / 2));
    const Complex zp = std::exp(Complex(0.0, local_z / 2));
    local(0, 0) = zm * zm;
    local(1, 1) = zm * zp;
    local(2, 2) = zp * zm;
    local(3, 3) = zp * zp;
    return local * zz_target(zz_theta) * std::exp(Complex(0.0, -zz_theta / 2));
  }
};

inline CompiledCz compile_cz() { return {}; }

}  // namespace dualrail::protocols
