// evolve.hpp -- closed- and open-system propagation.
//
// Unitary evolution goes through an eigendecomposition of the (Hermitian)
// Hamiltonian. Open-system evolution integrates the Lindblad master equation
// with fixed-step RK4 on the density matrix itself; every call is verified by
// step doubling and rejected if the two resolutions disagree. For segments
// that repeat many times (readout trees walk the same waits over and over),
// lindblad_channel builds the superoperator exp(L t) once and ChannelCache
// memoizes it.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "dualrail/channels.hpp"
#include "dualrail/collapse.hpp"
#include "dualrail/operators.hpp"
#include "dualrail/state.hpp"

namespace dualrail::dynamics {

using dualrail::Complex;
using dualrail::DensityMatrix;
using dualrail::I_UNIT;
using dualrail::Ket;
using dualrail::Operator;
using dualrail::Vector;

struct EvolveOptions {
  double step_scale = 0.01;      // h <= step_scale / (|H|_F + sum_k |c_k+ c_k|_F)
  double richardson_tol = 1e-8;  // max-abs agreement required between h and h/2 runs
  long max_steps = 2000000;      // hard cap against absurd step counts
};

namespace detail {

inline void require_hermitian(const Matrix& h, const char* who) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument(std::string(who) + ": Hamiltonian is not Hermitian");
}

}  // namespace detail

// e^{-iHt} from the spectral decomposition of H.
inline Matrix propagator(const Operator& h, double t) {
  detail::require_hermitian(h.mat, "propagator");
  Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (h.mat + h.mat.adjoint())).eval());
  if (es.info() != Eigen::Success) throw std::runtime_error("propagator: eigensolver failed");
  const Eigen::VectorXd w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-I_UNIT * w(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Ket evolve_unitary(const Ket& psi, const Operator& h, double t) {
  if (!(psi.layout == h.layout)) throw std::invalid_argument("evolve_unitary: layout mismatch");
  return Ket{psi.layout, propagator(h, t) * psi.vec};
}

inline DensityMatrix evolve_unitary(const DensityMatrix& rho, const Operator& h, double t) {
  if (!(rho.layout == h.layout)) throw std::invalid_argument("evolve_unitary: layout mismatch");
  const Matrix u = propagator(h, t);
  DensityMatrix out{rho.layout, u * rho.mat * u.adjoint()};
  out.resymmetrize();
  return out;
}

// ---- Lindblad master equation ----

// drho/dt = -i[H,rho] + sum_k ( c_k rho c_k+ - 1/2 {c_k+ c_k, rho} ), evaluated
// in matrix form (no superoperator is materialized here).
inline DensityMatrix evolve_lindblad(const DensityMatrix& rho, const Operator& h,
                                     const std::vector<Matrix>& cops, double t,
                                     const EvolveOptions& opts = {}) {
  if (!(rho.layout == h.layout)) throw std::invalid_argument("evolve_lindblad: layout mismatch");
  if (t < 0.0) throw std::invalid_argument("evolve_lindblad: negative time");
  detail::require_hermitian(h.mat, "evolve_lindblad");
  const int d = rho.layout.dim();

  std::vector<Matrix> cs;
  double norm_sum = 0.0;
  Matrix cdagc_sum = Matrix::Zero(d, d);
  for (const auto& c : cops) {
    if (c.rows() != d || c.cols() != d)
      throw std::invalid_argument("evolve_lindblad: collapse operator size mismatch");
    if (c.cwiseAbs().maxCoeff() == 0.0) continue;  // zero-rate entries cost nothing
    const Matrix cd = c.adjoint() * c;
    norm_sum += cd.norm();
    cdagc_sum += cd;
    cs.push_back(c);
  }
  const double scale = h.mat.norm() + norm_sum;
  if (t == 0.0 || scale == 0.0) return rho;

  const long n = std::max<long>(1, static_cast<long>(std::ceil(t * scale / opts.step_scale)));
  if (2 * n > opts.max_steps)
    throw std::runtime_error("evolve_lindblad: step count exceeds max_steps");

  auto rhs = [&](const Matrix& r) -> Matrix {
    Matrix out = -I_UNIT * (h.mat * r - r * h.mat);
    out.noalias() -= 0.5 * (cdagc_sum * r + r * cdagc_sum);
    for (const auto& c : cs) out.noalias() += c * r * c.adjoint();
    return out;
  };
  auto run = [&](long steps) -> Matrix {
    const double hstep = t / static_cast<double>(steps);
    Matrix r = rho.mat;
    for (long s = 0; s < steps; ++s) {
      const Matrix k1 = rhs(r);
      const Matrix k2 = rhs(r + 0.5 * hstep * k1);
      const Matrix k3 = rhs(r + 0.5 * hstep * k2);
      const Matrix k4 = rhs(r + hstep * k3);
      r += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      r = 0.5 * (r + r.adjoint()).eval();
    }
    return r;
  };

  const Matrix coarse = run(n);
  const Matrix fine = run(2 * n);
  const double disagreement = (coarse - fine).cwiseAbs().maxCoeff();
  // Written so that NaN also fails the check.
  if (!(disagreement <= opts.richardson_tol))
    throw std::runtime_error("evolve_lindblad: step-doubling check failed, integrator inaccurate");
  return DensityMatrix{rho.layout, fine};
}

inline DensityMatrix evolve_lindblad(const DensityMatrix& rho, const Operator& h,
                                     const std::vector<CollapseOp>& cops, double t,
                                     const EvolveOptions& opts = {}) {
  return evolve_lindblad(rho, h, collapse_matrices(cops), t, opts);
}

// ---- channel superoperators ----

// Column-stacked Liouvillian: vec(drho/dt) = L vec(rho).
inline Matrix liouvillian(const Operator& h, const std::vector<Matrix>& cops) {
  using dualrail::superop_left_right;
  detail::require_hermitian(h.mat, "liouvillian");
  const int d = h.layout.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix l = -I_UNIT * (superop_left_right(h.mat, id) - superop_left_right(id, h.mat));
  for (const auto& c : cops) {
    if (c.rows() != d || c.cols() != d)
      throw std::invalid_argument("liouvillian: collapse operator size mismatch");
    if (c.cwiseAbs().maxCoeff() == 0.0) continue;
    const Matrix cd = c.adjoint() * c;
    l += superop_left_right(c, c.adjoint());
    l -= 0.5 * (superop_left_right(cd, id) + superop_left_right(id, cd));
  }
  return l;
}

// exp(L t): one dense d^2 x d^2 matrix exponential, amortized over many applications.
inline Matrix lindblad_channel(const Operator& h, const std::vector<Matrix>& cops, double t) {
  if (t < 0.0) throw std::invalid_argument("lindblad_channel: negative time");
  return (liouvillian(h, cops) * t).exp();
}

inline Matrix lindblad_channel(const Operator& h, const std::vector<CollapseOp>& cops, double t) {
  return lindblad_channel(h, collapse_matrices(cops), t);
}

// Keyed memo for channel superoperators. Owned by the caller and threaded
// through the protocol code explicitly; there is no global cache.
class ChannelCache {
 public:
  const Matrix& get(const std::string& key, const std::function<Matrix()>& make) {
    auto it = store_.find(key);
    if (it == store_.end()) it = store_.emplace(key, make()).first;
    return it->second;
  }
  std::size_t size() const { return store_.size(); }

 private:
  std::map<std::string, Matrix> store_;
};

}  // namespace dualrail::dynamics
