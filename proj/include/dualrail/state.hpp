// state.hpp -- kets and density matrices on a HilbertLayout.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "dualrail/operators.hpp"

namespace dualrail {

struct Ket {
  HilbertLayout layout;
  Vector vec;

  Ket() = default;
  Ket(HilbertLayout lay, Vector v) : layout(std::move(lay)), vec(std::move(v)) {
    if (vec.size() != layout.dim())
      throw std::invalid_argument("Ket: vector size does not match layout");
  }

  double norm() const { return vec.norm(); }
  void normalize() {
    const double n = vec.norm();
    if (n <= 0.0) throw std::runtime_error("Ket::normalize: zero vector");
    vec /= n;
  }
};

// |n0 n1 ... nk> basis ket.
inline Ket basis_ket(const HilbertLayout& lay, const std::vector<int>& occ) {
  Vector v = Vector::Zero(lay.dim());
  v(lay.index(occ)) = 1.0;
  return Ket(lay, v);
}

struct DensityMatrix {
  HilbertLayout layout;
  Matrix mat;

  DensityMatrix() = default;
  DensityMatrix(HilbertLayout lay, Matrix m) : layout(std::move(lay)), mat(std::move(m)) {
    if (mat.rows() != layout.dim() || mat.cols() != layout.dim())
      throw std::invalid_argument("DensityMatrix: matrix size does not match layout");
  }

  static DensityMatrix pure(const Ket& psi) {
    return DensityMatrix(psi.layout, psi.vec * psi.vec.adjoint());
  }

  double trace_real() const { return mat.trace().real(); }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat + mat.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  // Hermitian within tol_herm, unit trace within tol_trace, eigenvalues above
  // -tol_pos. Validity is checked on demand rather than enforced per call.
  bool is_valid(double tol_herm = 1e-10, double tol_trace = 1e-9, double tol_pos = 1e-9) const {
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol_herm) return false;
    if (std::abs(mat.trace().real() - 1.0) > tol_trace) return false;
    if (std::abs(mat.trace().imag()) > tol_trace) return false;
    return min_eigenvalue() >= -tol_pos;
  }

  // rho <- (rho + rho^dagger)/2, applied after every channel to stop
  // accumulated floating-point asymmetry.
  void resymmetrize() { mat = 0.5 * (mat + mat.adjoint()).eval(); }

  void normalize() {
    const double t = mat.trace().real();
    if (t <= 0.0) throw std::runtime_error("DensityMatrix::normalize: nonpositive trace");
    mat /= t;
  }
};

inline Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (rho.layout != op.layout) throw std::invalid_argument("expectation: layout mismatch");
  return (op.mat * rho.mat).trace();
}

}  // namespace dualrail
