// operators.hpp -- dense operators on a HilbertLayout plus the usual mode-local builders.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "dualrail/layout.hpp"

namespace dualrail {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex I_UNIT{0.0, 1.0};

// An operator tied to a layout. Plain aggregate; the layout travels with the
// matrix so dimension mismatches surface early.
struct Operator {
  HilbertLayout layout;
  Matrix mat;

  Operator() = default;
  Operator(HilbertLayout lay, Matrix m) : layout(std::move(lay)), mat(std::move(m)) {
    if (mat.rows() != layout.dim() || mat.cols() != layout.dim())
      throw std::invalid_argument("Operator: matrix size does not match layout");
  }

  Operator dagger() const { return Operator(layout, mat.adjoint()); }

  bool is_hermitian(double tol = 1e-10) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_unitary(double tol = 1e-10) const {
    Matrix d = mat.adjoint() * mat - Matrix::Identity(mat.rows(), mat.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
  }
};

inline Operator operator*(const Operator& x, const Operator& y) {
  if (x.layout != y.layout) throw std::invalid_argument("Operator product: layout mismatch");
  return Operator(x.layout, x.mat * y.mat);
}

// ---- Mode-local builders (single-mode matrices of dimension d) ----

// a |n> = sqrt(n) |n-1>
inline Matrix annihilation(int d) {
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix creation(int d) { return annihilation(d).adjoint(); }

inline Matrix number_op(int d) {
  Matrix n = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

// (-1)^n photon parity
inline Matrix parity_op(int d) {
  Matrix p = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

// |i><j|
inline Matrix basis_op(int d, int i, int j) {
  if (i < 0 || i >= d || j < 0 || j >= d) throw std::out_of_range("basis_op: level out of range");
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

// Rotation by theta about the axis (cos phi, sin phi, 0) within levels (l0, l1),
// identity elsewhere:
//   [[cos(theta/2),            -i e^{-i phi} sin(theta/2)],
//    [-i e^{i phi} sin(theta/2), cos(theta/2)            ]]
// This is the same matrix shape as the codespace beamsplitter rotation, reused
// for transmon g-e and g-f pulses.
inline Matrix subspace_rotation(int d, int l0, int l1, double theta, double phi) {
  if (l0 == l1) throw std::invalid_argument("subspace_rotation: identical levels");
  Matrix r = Matrix::Identity(d, d);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  r(l0, l0) = c;
  r(l1, l1) = c;
  r(l0, l1) = -I_UNIT * std::exp(-I_UNIT * phi) * s;
  r(l1, l0) = -I_UNIT * std::exp(I_UNIT * phi) * s;
  return r;
}

// ---- Embedding into a layout ----

inline Operator identity_op(const HilbertLayout& lay) {
  return Operator(lay, Matrix::Identity(lay.dim(), lay.dim()));
}

// op acting on one mode, identity on all others.
inline Operator embed(const HilbertLayout& lay, int mode, const Matrix& op) {
  if (mode < 0 || mode >= lay.modes()) throw std::out_of_range("embed: mode out of range");
  if (op.rows() != lay.dim(mode) || op.cols() != lay.dim(mode))
    throw std::invalid_argument("embed: operator size does not match mode dimension");
  int pre = 1, post = 1;
  for (int m = 0; m < mode; ++m) pre *= lay.dim(m);
  for (int m = mode + 1; m < lay.modes(); ++m) post *= lay.dim(m);
  Matrix tmp = Eigen::kroneckerProduct(Matrix::Identity(pre, pre), op);
  return Operator(lay, Eigen::kroneckerProduct(tmp, Matrix::Identity(post, post)));
}

// op acting jointly on two (not necessarily adjacent) modes; op is given on the
// product space with mode_i slow and mode_j fast.
inline Operator embed_two(const HilbertLayout& lay, int mode_i, int mode_j, const Matrix& op) {
  if (mode_i == mode_j) throw std::invalid_argument("embed_two: identical modes");
  const int di = lay.dim(mode_i), dj = lay.dim(mode_j);
  if (op.rows() != di * dj || op.cols() != di * dj)
    throw std::invalid_argument("embed_two: operator size does not match mode pair");
  const int d = lay.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int base = 0; base < d; ++base) {
    auto occ = lay.unpack(base);
    if (occ[mode_i] != 0 || occ[mode_j] != 0) continue;  // enumerate each spectator block once
    for (int ni = 0; ni < di; ++ni)
      for (int nj = 0; nj < dj; ++nj) {
        occ[mode_i] = ni;
        occ[mode_j] = nj;
        const int row = lay.index(occ);
        for (int mi = 0; mi < di; ++mi)
          for (int mj = 0; mj < dj; ++mj) {
            occ[mode_i] = mi;
            occ[mode_j] = mj;
            out(row, lay.index(occ)) = op(ni * dj + nj, mi * dj + mj);
          }
        occ[mode_i] = 0;
        occ[mode_j] = 0;
      }
  }
  return Operator(lay, out);
}

// Fock-state exchange between two modes. For equal dimensions this is the exact
// two-mode SWAP; for unequal dimensions occupations at or above the smaller
// dimension are left in place so the matrix stays a permutation (unitary).
inline Operator swap_modes(const HilbertLayout& lay, int mode_i, int mode_j) {
  const int d = lay.dim();
  const int di = lay.dim(mode_i), dj = lay.dim(mode_j);
  Matrix out = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    auto occ = lay.unpack(col);
    const int ni = occ[mode_i], nj = occ[mode_j];
    if (ni < dj && nj < di) {
      occ[mode_i] = nj;
      occ[mode_j] = ni;
    }
    out(lay.index(occ), col) = 1.0;
  }
  return Operator(lay, out);
}

// Total photon number over a set of cavity modes.
inline Operator total_number(const HilbertLayout& lay, const std::vector<int>& modes) {
  Matrix n = Matrix::Zero(lay.dim(), lay.dim());
  for (int m : modes) n += embed(lay, m, number_op(lay.dim(m))).mat;
  return Operator(lay, n);
}

// exp(i phi (n_a + n_b + ...)) software frame rotation over the given modes.
inline Operator frame_rotation(const HilbertLayout& lay, const std::vector<int>& modes, double phi) {
  const int d = lay.dim();
  Matrix f = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    int n = 0;
    for (int m : modes) n += lay.occupation(k, m);
    f(k, k) = std::exp(I_UNIT * (phi * n));
  }
  return Operator(lay, f);
}

}  // namespace dualrail
