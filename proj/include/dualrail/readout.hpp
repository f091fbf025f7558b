// readout.hpp -- imperfect transmon measurement as explicit branch channels.
//
// A measurement splits a density matrix into labeled branches, one per
// assignment outcome. Each branch keeps the full (mis)assignment structure:
// the state attached to label g still carries the piece that was really in e
// but got decayed or misread, and so on. Protocols chain these branches into
// exact outcome trees instead of sampling.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/channels.hpp"
#include "dualrail/device_params.hpp"
#include "dualrail/operators.hpp"
#include "dualrail/state.hpp"

namespace dualrail::protocols {

using dualrail::Complex;
using dualrail::DensityMatrix;
using dualrail::HilbertLayout;
using dualrail::Matrix;

// Whether a protocol runs as its exact unitary construction or as the full
// time evolution with the device noise model.
enum class GateMode { ideal, physical };

struct OutcomeBranch {
  std::string label;        // outcome characters so far, e.g. "eg"
  double probability = 0.0;
  DensityMatrix state;      // normalized; meaningless if probability ~ 0
};

// Transmon readout imperfections in the g-e manifold: P_d is the chance the
// transmon decays during the readout window, P_o the chance of assigning the
// wrong label with the state left untouched.
struct ReadoutModel {
  double P_d = 0.01;
  double P_o = 1.0e-4;

  static ReadoutModel from(const dynamics::DeviceParams& p) { return {p.P_d, p.P_o}; }

  void validate() const {
    if (!(P_d >= 0.0 && P_o >= 0.0 && P_d + P_o <= 1.0))
      throw std::invalid_argument("ReadoutModel: need P_d, P_o >= 0 and P_d + P_o <= 1");
  }
};

namespace detail {

// I (x) |to><from| on the transmon mode: picks the `from` block and deposits
// it at `to`. Sandwiching with this both projects and relabels.
inline Matrix transfer(const HilbertLayout& lay, int mode_q, int to, int from) {
  return dualrail::embed(lay, mode_q, dualrail::basis_op(lay.dim(mode_q), to, from)).mat;
}

inline OutcomeBranch make_branch(std::string label, const HilbertLayout& lay, Matrix m) {
  m = 0.5 * (m + m.adjoint()).eval();
  OutcomeBranch b;
  b.label = std::move(label);
  b.probability = std::real(m.trace());
  // roundoff can leave an empty branch at -1e-17; anything more negative is
  // a real bug and stays visible
  if (b.probability < 0.0 && b.probability > -1e-12) b.probability = 0.0;
  if (b.probability > 1e-15) m /= b.probability;
  b.state = DensityMatrix{lay, std::move(m)};
  return b;
}

}  // namespace detail

// Two-outcome g/e readout. An optional pre-applied channel superoperator
// models the cavity decay accumulated over the readout window.
inline std::vector<OutcomeBranch> noisy_measure(const DensityMatrix& rho_in,
                                                const ReadoutModel& model, int mode_q,
                                                const Matrix* idle_channel = nullptr) {
  model.validate();
  const HilbertLayout& lay = rho_in.layout;
  DensityMatrix rho = idle_channel ? dualrail::apply_superop(rho_in, *idle_channel) : rho_in;

  const Matrix pg = detail::transfer(lay, mode_q, 0, 0);
  const Matrix pe = detail::transfer(lay, mode_q, 1, 1);
  const Matrix t_eg = detail::transfer(lay, mode_q, 0, 1);  // decay during the window

  const Matrix rho_g = pg * rho.mat * pg;
  const Matrix rho_e = pe * rho.mat * pe;
  const Matrix rho_dec = t_eg * rho.mat * t_eg.adjoint();
  // population above |e> has no defined readout outcome in this model
  const double high = rho.trace_real() - std::real(rho_g.trace()) - std::real(rho_e.trace());
  if (high > 1e-9)
    throw std::invalid_argument("noisy_measure: transmon population above |e>");

  // Misreads leave the state untouched; only decay moves population. The
  // decayed piece is equally likely to be recorded either way.
  Matrix mg = (1.0 - model.P_o) * rho_g + 0.5 * model.P_d * rho_dec + model.P_o * rho_e;
  Matrix me = (1.0 - model.P_o - model.P_d) * rho_e + 0.5 * model.P_d * rho_dec +
              model.P_o * rho_g;
  return {detail::make_branch("g", lay, std::move(mg)),
          detail::make_branch("e", lay, std::move(me))};
}

// Projective g/e/f readout followed by classical label confusion: eta_ge
// symmetrically swaps the g and e labels, eta_gf the g and f labels.
inline std::vector<OutcomeBranch> three_outcome_measure(const DensityMatrix& rho, double eta_ge,
                                                        double eta_gf, int mode_q) {
  if (eta_ge < 0.0 || eta_gf < 0.0 || eta_ge + eta_gf > 1.0)
    throw std::invalid_argument("three_outcome_measure: bad confusion rates");
  const HilbertLayout& lay = rho.layout;
  if (lay.dim(mode_q) < 3)
    throw std::invalid_argument("three_outcome_measure: transmon mode needs |f> level");
  const Matrix pg = detail::transfer(lay, mode_q, 0, 0);
  const Matrix pe = detail::transfer(lay, mode_q, 1, 1);
  const Matrix pf = detail::transfer(lay, mode_q, 2, 2);
  const Matrix rg = pg * rho.mat * pg, re = pe * rho.mat * pe, rf = pf * rho.mat * pf;
  return {detail::make_branch("g", lay, (1.0 - eta_ge - eta_gf) * rg + eta_ge * re + eta_gf * rf),
          detail::make_branch("e", lay, eta_ge * rg + (1.0 - eta_ge) * re),
          detail::make_branch("f", lay, eta_gf * rg + (1.0 - eta_gf) * rf)};
}

// Reset handling after a g/e readout.
enum class ResetPolicy { conditional, unconditional, none };

// Conditional reset is a perfect pi pulse fired on branches labeled e. It
// restores the transmon when the label was right and corrupts it when the
// label was wrong, exactly as hardware feedback would.
inline void apply_reset(std::vector<OutcomeBranch>& branches, int mode_q,
                        ResetPolicy policy = ResetPolicy::conditional) {
  if (branches.empty()) return;
  const HilbertLayout& lay = branches.front().state.layout;
  const int dq = lay.dim(mode_q);
  const Matrix pi_pulse =
      dualrail::embed(lay, mode_q, dualrail::subspace_rotation(dq, 0, 1, M_PI, 0.0)).mat;
  for (auto& b : branches) {
    if (b.probability <= 1e-15) continue;
    switch (policy) {
      case ResetPolicy::none:
        break;
      case ResetPolicy::conditional:
        if (b.label.empty() || b.label.back() != 'e') break;
        b.state.mat = pi_pulse * b.state.mat * pi_pulse.adjoint();
        break;
      case ResetPolicy::unconditional: {
        // idealized dissipative reset: dump all transmon population into g
        Matrix fresh = Matrix::Zero(lay.dim(), lay.dim());
        for (int l = 0; l < dq; ++l) {
          const Matrix t = detail::transfer(lay, mode_q, 0, l);
          fresh += t * b.state.mat * t.adjoint();
        }
        b.state.mat = std::move(fresh);
        break;
      }
    }
    b.state.resymmetrize();
  }
}

inline double total_probability(const std::vector<OutcomeBranch>& branches) {
  double p = 0.0;
  for (const auto& b : branches) p += b.probability;
  return p;
}

}  // namespace dualrail::protocols
