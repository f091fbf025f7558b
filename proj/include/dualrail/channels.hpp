// channels.hpp -- Kraus maps, partial trace, superoperator application.
#pragma once

#include <vector>

#include "dualrail/state.hpp"

namespace dualrail {

struct BranchResult {
  DensityMatrix state;
  double probability = 0.0;
};

// Sum_k E_k rho E_k^dagger. The Kraus set must be trace non-increasing
// (sum E^dagger E <= 1 within 1e-9). The pre-normalization trace is returned as
// the branch probability; with normalize set the returned state has unit trace.
inline BranchResult apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& kraus,
                                bool normalize = false) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty Kraus set");
  const int d = rho.layout.dim();
  Matrix comp = Matrix::Zero(d, d);
  for (const auto& e : kraus) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("apply_kraus: Kraus size mismatch");
    comp += e.adjoint() * e;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(comp, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("apply_kraus: set is trace increasing");

  Matrix out = Matrix::Zero(d, d);
  for (const auto& e : kraus) out += e * rho.mat * e.adjoint();

  BranchResult r;
  r.state = DensityMatrix(rho.layout, std::move(out));
  r.state.resymmetrize();
  r.probability = r.state.trace_real();
  if (normalize) {
    if (r.probability <= 0.0) throw std::runtime_error("apply_kraus: null branch cannot be normalized");
    r.state.mat /= r.probability;
  }
  return r;
}

// Trace over all modes not listed in keep (keep is given in layout order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const HilbertLayout& lay = rho.layout;
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
  for (size_t k = 1; k < keep.size(); ++k)
    if (keep[k] <= keep[k - 1]) throw std::invalid_argument("partial_trace: keep must be strictly increasing");

  std::vector<int> kept_dims;
  std::vector<std::string> kept_labels;
  for (int m : keep) {
    kept_dims.push_back(lay.dim(m));
    kept_labels.push_back(lay.label(m));
  }
  HilbertLayout sub(kept_dims, kept_labels);

  // Group the full basis by the traced-out occupations; each group contributes
  // one diagonal gather of the input matrix.
  const int d = lay.dim();
  std::vector<int> keep_index(d), rest_index(d);
  std::vector<bool> is_kept(lay.modes(), false);
  for (int m : keep) is_kept[m] = true;
  for (int i = 0; i < d; ++i) {
    int ki = 0, ri = 0;
    for (int m = 0; m < lay.modes(); ++m) {
      const int occ = lay.occupation(i, m);
      if (is_kept[m]) ki = ki * lay.dim(m) + occ;
      else ri = ri * lay.dim(m) + occ;
    }
    keep_index[i] = ki;
    rest_index[i] = ri;
  }
  int rest_dim = 1;
  for (int m = 0; m < lay.modes(); ++m)
    if (!is_kept[m]) rest_dim *= lay.dim(m);

  std::vector<std::vector<int>> groups(rest_dim);
  for (int i = 0; i < d; ++i) groups[rest_index[i]].push_back(i);

  Matrix out = Matrix::Zero(sub.dim(), sub.dim());
  for (const auto& g : groups)
    for (int i : g)
      for (int j : g) out(keep_index[i], keep_index[j]) += rho.mat(i, j);
  return DensityMatrix(sub, std::move(out));
}

// Tr[rho sigma], checked real within 1e-10. For a pure sigma this is the usual
// overlap fidelity.
inline double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.layout != sigma.layout) throw std::invalid_argument("state_fidelity: layout mismatch");
  const Complex f = (rho.mat * sigma.mat).trace();
  if (std::abs(f.imag()) > 1e-10) throw std::runtime_error("state_fidelity: nonreal overlap");
  return f.real();
}

// ---- Superoperator plumbing (column-stacked vectorization) ----

inline Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, int d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

// vec(A rho B) = (B^T kron A) vec(rho) under column stacking.
inline Matrix superop_left_right(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(b.transpose(), a);
}

// rho -> U rho U+ as a superoperator, for composing unitaries with cached channels.
inline Matrix conjugation_superop(const Matrix& u) {
  return superop_left_right(u, u.adjoint());
}

inline DensityMatrix apply_superop(const DensityMatrix& rho, const Matrix& s) {
  const int d = rho.layout.dim();
  if (s.rows() != d * d || s.cols() != d * d)
    throw std::invalid_argument("apply_superop: superoperator size mismatch");
  DensityMatrix out(rho.layout, unvectorize(s * vectorize(rho.mat), d));
  out.resymmetrize();
  return out;
}

// Apply a superoperator that acts only on a contiguous mode range
// [first, first+count). The generator of a segment often factorizes over
// disjoint mode groups; this lets each factor channel be exponentiated at its
// own (much smaller) dimension.
inline DensityMatrix apply_superop_range(const DensityMatrix& rho, const Matrix& s, int first,
                                         int count) {
  const HilbertLayout& lay = rho.layout;
  if (first < 0 || count < 1 || first + count > lay.modes())
    throw std::out_of_range("apply_superop_range: bad mode range");
  int df = 1, pre = 1, post = 1;
  for (int m = 0; m < first; ++m) pre *= lay.dim(m);
  for (int m = first; m < first + count; ++m) df *= lay.dim(m);
  for (int m = first + count; m < lay.modes(); ++m) post *= lay.dim(m);
  if (s.rows() != df * df || s.cols() != df * df)
    throw std::invalid_argument("apply_superop_range: superoperator size mismatch");

  // Flat index = (p * df + F) * post + q with F the factor index.
  Matrix out = Matrix::Zero(lay.dim(), lay.dim());
  Matrix block(df, df);
  for (int p = 0; p < pre; ++p)
    for (int q = 0; q < post; ++q)
      for (int pp = 0; pp < pre; ++pp)
        for (int qq = 0; qq < post; ++qq) {
          for (int f = 0; f < df; ++f)
            for (int g = 0; g < df; ++g)
              block(f, g) = rho.mat((p * df + f) * post + q, (pp * df + g) * post + qq);
          Matrix mapped = unvectorize(s * vectorize(block), df);
          for (int f = 0; f < df; ++f)
            for (int g = 0; g < df; ++g)
              out((p * df + f) * post + q, (pp * df + g) * post + qq) = mapped(f, g);
        }
  DensityMatrix res(lay, std::move(out));
  res.resymmetrize();
  return res;
}

}  // namespace dualrail
