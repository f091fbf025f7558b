// layout.hpp -- composite Hilbert space bookkeeping for a fixed list of modes.
#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualrail {

// Ordered list of mode dimensions. The order is fixed at construction and all
// index arithmetic is row-major with the last mode varying fastest, so a basis
// state |n0 n1 ... nk> maps to index ((n0*d1 + n1)*d2 + ...) + nk.
class HilbertLayout {
public:
  HilbertLayout() = default;

  explicit HilbertLayout(std::vector<int> dims, std::vector<std::string> labels = {})
      : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.empty()) throw std::invalid_argument("HilbertLayout: no modes");
    for (int d : dims_)
      if (d < 2) throw std::invalid_argument("HilbertLayout: mode dimension < 2");
    if (labels_.empty()) {
      for (size_t m = 0; m < dims_.size(); ++m) labels_.push_back("mode" + std::to_string(m));
    } else if (labels_.size() != dims_.size()) {
      throw std::invalid_argument("HilbertLayout: label count != mode count");
    }
    strides_.assign(dims_.size(), 1);
    for (int m = static_cast<int>(dims_.size()) - 2; m >= 0; --m)
      strides_[m] = strides_[m + 1] * dims_[m + 1];
    dim_ = strides_[0] * dims_[0];
  }

  // The default device layout: two cavities and one three-level transmon.
  static HilbertLayout standard(int cavity_dim = 3, int transmon_dim = 3) {
    return HilbertLayout({cavity_dim, cavity_dim, transmon_dim},
                         {"cavity_a", "cavity_b", "transmon"});
  }

  int modes() const { return static_cast<int>(dims_.size()); }
  int dim() const { return dim_; }
  int dim(int mode) const { return dims_.at(mode); }
  int stride(int mode) const { return strides_.at(mode); }
  const std::string& label(int mode) const { return labels_.at(mode); }
  const std::vector<int>& dims() const { return dims_; }

  int index(const std::vector<int>& occ) const {
    if (occ.size() != dims_.size()) throw std::invalid_argument("HilbertLayout::index: bad occupation length");
    int idx = 0;
    for (size_t m = 0; m < dims_.size(); ++m) {
      if (occ[m] < 0 || occ[m] >= dims_[m]) throw std::out_of_range("HilbertLayout::index: occupation out of range");
      idx += occ[m] * strides_[m];
    }
    return idx;
  }

  std::vector<int> unpack(int index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("HilbertLayout::unpack: index out of range");
    std::vector<int> occ(dims_.size());
    for (size_t m = 0; m < dims_.size(); ++m) {
      occ[m] = index / strides_[m];
      index -= occ[m] * strides_[m];
    }
    return occ;
  }

  // Occupation of a single mode within a flat basis index.
  int occupation(int index, int mode) const {
    return (index / strides_.at(mode)) % dims_.at(mode);
  }

  bool operator==(const HilbertLayout& other) const { return dims_ == other.dims_; }
  bool operator!=(const HilbertLayout& other) const { return !(*this == other); }

private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
  std::vector<int> strides_;
  int dim_ = 0;
};

}  // namespace dualrail
