// joint_parity.hpp -- joint-parity unitary and the erasure check built on it.
//
// A beamsplitter drive between the two rails, detuned so that the g and f
// transmon states see opposite effective detunings, closes a full Rabi period
// exactly when the per-photon geometric phases differ by pi. The transmon
// then picks up the joint photon-number parity of the rails while every
// Fock state returns to itself.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/collapse.hpp"
#include "dualrail/device_params.hpp"
#include "dualrail/evolve.hpp"
#include "dualrail/hamiltonians.hpp"
#include "dualrail/readout.hpp"

namespace dualrail::protocols {

namespace detail {

inline Matrix gf_pulse(const HilbertLayout& lay, int mode_q, double theta, double phi) {
  const int dq = lay.dim(mode_q);
  if (dq < 3) throw std::invalid_argument("gf_pulse: transmon mode needs |f> level");
  return embed(lay, mode_q, subspace_rotation(dq, 0, 2, theta, phi)).mat;
}

}  // namespace detail

// Per-photon phase the g (and e) transmon branch acquires over one gate
// period. Software frame rotations by the negative of this angle align the
// physical gate with its ideal form.
inline double u_jp_frame_angle(const dynamics::DeviceParams& p) {
  if (p.chi_gf == 0.0) throw std::invalid_argument("u_jp_frame_angle: chi_gf is zero");
  return p.chi_gf < 0.0 ? M_PI / 2 : -M_PI / 2;
}

// Exact target: identity on the g and e transmon branches, joint-parity
// phase e^{i pi (n_a + n_b)} on the f branch.
inline Matrix u_jp_ideal(const HilbertLayout& lay, int mode_a = 0, int mode_b = 1,
                         int mode_q = 2) {
  const int d = lay.dim();
  if (lay.dim(mode_q) < 3) throw std::invalid_argument("u_jp_ideal: transmon mode needs |f>");
  Matrix u = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const int n = lay.occupation(k, mode_a) + lay.occupation(k, mode_b);
    const bool f_branch = lay.occupation(k, mode_q) == 2;
    u(k, k) = (f_branch && n % 2 == 1) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
  }
  return u;
}

// Closed-system evolution of the conditional beamsplitter over one period.
// Equals u_jp_ideal only after the frame rotation by -u_jp_frame_angle and
// only at the matched operating point (delta = -chi_gf / 2, g chosen so a
// full period closes for both branches).
inline Matrix u_jp_physical_unitary(const HilbertLayout& lay, const dynamics::DeviceParams& p,
                                    int mode_a = 0, int mode_b = 1, int mode_q = 2) {
  const Operator h = dynamics::build_conditional_bs(lay, p, mode_a, mode_b, mode_q);
  return dynamics::propagator(h, p.jp_gate_time());
}

// Same evolution with a jump operator fired at an interior time. Used to
// probe which error channels the gate is transparent to.
inline Matrix u_jp_unitary_with_jump(const HilbertLayout& lay, const dynamics::DeviceParams& p,
                                     const Matrix& jump, double fraction, int mode_a = 0,
                                     int mode_b = 1, int mode_q = 2) {
  if (fraction < 0.0 || fraction > 1.0)
    throw std::invalid_argument("u_jp_unitary_with_jump: fraction outside [0, 1]");
  const Operator h = dynamics::build_conditional_bs(lay, p, mode_a, mode_b, mode_q);
  const double tau = fraction * p.jp_gate_time();
  return dynamics::propagator(h, p.jp_gate_time() - tau) * jump * dynamics::propagator(h, tau);
}

// Superoperator for one joint-parity gate on modes (0, 1, 2), frame-aligned.
// Ideal mode conjugates by the exact unitary; physical mode exponentiates the
// Lindblad generator over the gate period and folds in the software frame.
// Cache entries are keyed by name only, so a cache instance must not be
// shared across device parameter sets.
inline const Matrix& u_jp_channel(const HilbertLayout& lay, const dynamics::DeviceParams& p,
                                  GateMode mode, dynamics::ChannelCache& cache,
                                  const std::string& key_prefix = "") {
  const std::string key =
      key_prefix + (mode == GateMode::ideal ? "ujp_ideal" : "ujp_physical");
  return cache.get(key, [&]() {
    if (mode == GateMode::ideal) return conjugation_superop(u_jp_ideal(lay));
    const Operator h = dynamics::build_conditional_bs(lay, p);
    const Matrix lind = dynamics::lindblad_channel(h, dynamics::collapse_ops(lay, p),
                                                   p.jp_gate_time());
    const Matrix frame =
        frame_rotation(lay, {0, 1}, -u_jp_frame_angle(p)).mat;
    return Matrix(conjugation_superop(frame) * lind);
  });
}

// ---- erasure check ----
//
// gf Ramsey interferometer around one joint-parity gate: even joint parity
// flips g to f, odd parity returns g. Measuring the transmon flags leakage
// (outcome f) or a transmon decay during the gate (outcome e) while leaving
// codespace states untouched.
inline std::vector<OutcomeBranch> erasure_check(const DensityMatrix& rho,
                                                const dynamics::DeviceParams& p, GateMode mode,
                                                dynamics::ChannelCache& cache) {
  const HilbertLayout& lay = rho.layout;
  if (lay.modes() != 3 || lay.dim(2) < 3)
    throw std::invalid_argument("erasure_check: expected rails + three-level transmon");
  const Matrix pulse = detail::gf_pulse(lay, 2, M_PI / 2, 0.0);

  DensityMatrix work = rho;
  work.mat = (pulse * work.mat * pulse.adjoint()).eval();
  work = apply_superop(work, u_jp_channel(lay, p, mode, cache));
  work.mat = (pulse * work.mat * pulse.adjoint()).eval();
  work.resymmetrize();

  const double eta_ge = mode == GateMode::ideal ? 0.0 : p.eta_ge;
  const double eta_gf = mode == GateMode::ideal ? 0.0 : p.eta_gf;
  return three_outcome_measure(work, eta_ge, eta_gf, 2);
}

}  // namespace dualrail::protocols
