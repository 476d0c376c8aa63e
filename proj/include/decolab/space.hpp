#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace decolab {

/// Ordered tensor factors of a composite Hilbert space.
///
/// The leftmost factor is the most significant in the flattened basis index:
///   |i0> (x) |i1> (x) ... (x) |ik|  ->  i0*d1*...*dk + i1*d2*...*dk + ... + ik
/// Total dimension is capped at kMaxDenseDim; larger spaces belong to the
/// product-form machinery.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<std::size_t> factor_dims,
                          std::vector<std::string> labels = {});

  static CompositeSpace single(std::size_t dim, std::string label = {});
  static CompositeSpace qubits(std::size_t count);

  const std::vector<std::size_t>& factor_dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_factors() const { return dims_.size(); }
  std::size_t total_dim() const { return total_; }

  // Stride of factor k in the flat index (product of the dimensions to its right).
  std::size_t stride(std::size_t factor) const;

  std::size_t flat_index(std::span<const std::size_t> multi) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  // Spaces are interchangeable when the factor dimensions agree; labels are
  // naming only.
  friend bool operator==(const CompositeSpace& a, const CompositeSpace& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

// Concatenation of the factor sequences (and labels) of two spaces.
CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b);

// Space spanned by the kept factors, in their original relative order.
CompositeSpace subspace(const CompositeSpace& s, std::span<const std::size_t> keep);

}  // namespace decolab
