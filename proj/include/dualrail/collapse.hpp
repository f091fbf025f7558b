// collapse.hpp -- Lindblad collapse operators for the two cavities and the transmon.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualrail/device_params.hpp"
#include "dualrail/operators.hpp"

namespace dualrail::dynamics {

using dualrail::embed;
using dualrail::HilbertLayout;
using dualrail::Matrix;

struct CollapseOp {
  std::string name;
  Matrix mat;
};

namespace detail {

inline Matrix scaled_embed(const HilbertLayout& lay, int mode, double prefactor, const Matrix& op) {
  return std::sqrt(prefactor) * embed(lay, mode, op).mat;
}

}  // namespace detail

// The full idle/gate error model on [cavity_a, cavity_b, transmon]: cavity decay
// and heating, cavity dephasing, transmon decay/heating in both manifolds, and
// f-level dephasing. Zero-rate entries are kept (as zero matrices) so the list
// always has eleven named members in a fixed order.
inline std::vector<CollapseOp> collapse_ops(const HilbertLayout& lay, const DeviceParams& p) {
  if (lay.modes() != 3) throw std::invalid_argument("collapse_ops: expected 3 modes");
  if (lay.dim(2) < 3) throw std::invalid_argument("collapse_ops: transmon mode needs |f> level");
  using dualrail::annihilation;
  using dualrail::basis_op;
  using dualrail::creation;
  using dualrail::number_op;
  const int da = lay.dim(0), db = lay.dim(1), dq = lay.dim(2);
  std::vector<CollapseOp> out;
  out.reserve(11);
  out.push_back({"a_down", detail::scaled_embed(lay, 0, p.kappa_a * (1.0 + p.n_th), annihilation(da))});
  out.push_back({"b_down", detail::scaled_embed(lay, 1, p.kappa_b * (1.0 + p.n_th), annihilation(db))});
  out.push_back({"a_up", detail::scaled_embed(lay, 0, p.kappa_a * p.n_th, creation(da))});
  out.push_back({"b_up", detail::scaled_embed(lay, 1, p.kappa_b * p.n_th, creation(db))});
  out.push_back({"a_phi", detail::scaled_embed(lay, 0, 2.0 * p.gamma_phi_a, number_op(da))});
  out.push_back({"b_phi", detail::scaled_embed(lay, 1, 2.0 * p.gamma_phi_b, number_op(db))});
  out.push_back({"q_ge_down", detail::scaled_embed(lay, 2, p.Gamma_down_ge, basis_op(dq, 0, 1))});
  out.push_back({"q_ge_up", detail::scaled_embed(lay, 2, p.Gamma_up_ge, basis_op(dq, 1, 0))});
  out.push_back({"q_ef_down", detail::scaled_embed(lay, 2, p.Gamma_down_ef, basis_op(dq, 1, 2))});
  out.push_back({"q_ef_up", detail::scaled_embed(lay, 2, p.Gamma_up_ef, basis_op(dq, 2, 1))});
  out.push_back({"q_ff_phi", detail::scaled_embed(lay, 2, 2.0 * p.Gamma_phi_ff, basis_op(dq, 2, 2))});
  return out;
}

// Error model during dispersive readout, where the transmon only visits g and e:
// cavity decay/heating/dephasing plus g-e decay, heating, and dephasing.
inline std::vector<CollapseOp> readout_collapse_ops(const HilbertLayout& lay, const DeviceParams& p) {
  if (lay.modes() != 3) throw std::invalid_argument("readout_collapse_ops: expected 3 modes");
  using dualrail::annihilation;
  using dualrail::basis_op;
  using dualrail::creation;
  using dualrail::number_op;
  const int da = lay.dim(0), db = lay.dim(1), dq = lay.dim(2);
  std::vector<CollapseOp> out;
  out.push_back({"a_down", detail::scaled_embed(lay, 0, p.kappa_a * (1.0 + p.n_th), annihilation(da))});
  out.push_back({"b_down", detail::scaled_embed(lay, 1, p.kappa_b * (1.0 + p.n_th), annihilation(db))});
  out.push_back({"a_up", detail::scaled_embed(lay, 0, p.kappa_a * p.n_th, creation(da))});
  out.push_back({"b_up", detail::scaled_embed(lay, 1, p.kappa_b * p.n_th, creation(db))});
  out.push_back({"a_phi", detail::scaled_embed(lay, 0, 2.0 * p.gamma_phi_a, number_op(da))});
  out.push_back({"b_phi", detail::scaled_embed(lay, 1, 2.0 * p.gamma_phi_b, number_op(db))});
  out.push_back({"q_ge_down", detail::scaled_embed(lay, 2, p.Gamma_down_ge, basis_op(dq, 0, 1))});
  out.push_back({"q_ge_up", detail::scaled_embed(lay, 2, p.Gamma_up_ge, basis_op(dq, 1, 0))});
  out.push_back({"q_ee_phi", detail::scaled_embed(lay, 2, 2.0 * p.Gamma_phi_ee, basis_op(dq, 1, 1))});
  return out;
}

// Cavity-only loss and heating, for idles where the transmon is parked in g.
inline std::vector<CollapseOp> cavity_idle_ops(const HilbertLayout& lay, const DeviceParams& p,
                                               int mode_a = 0, int mode_b = 1) {
  using dualrail::annihilation;
  using dualrail::creation;
  const int da = lay.dim(mode_a), db = lay.dim(mode_b);
  std::vector<CollapseOp> out;
  out.push_back({"a_down", detail::scaled_embed(lay, mode_a, p.kappa_a * (1.0 + p.n_th), annihilation(da))});
  out.push_back({"b_down", detail::scaled_embed(lay, mode_b, p.kappa_b * (1.0 + p.n_th), annihilation(db))});
  out.push_back({"a_up", detail::scaled_embed(lay, mode_a, p.kappa_a * p.n_th, creation(da))});
  out.push_back({"b_up", detail::scaled_embed(lay, mode_b, p.kappa_b * p.n_th, creation(db))});
  return out;
}

inline std::vector<Matrix> collapse_matrices(const std::vector<CollapseOp>& ops) {
  std::vector<Matrix> out;
  out.reserve(ops.size());
  for (const auto& c : ops) out.push_back(c.mat);
  return out;
}

}  // namespace dualrail::dynamics
