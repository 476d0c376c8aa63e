#include "decolab/space.hpp"

#include <stdexcept>
#include <string>

#include "decolab/tolerances.hpp"

namespace decolab {

CompositeSpace::CompositeSpace(std::vector<std::size_t> factor_dims,
                               std::vector<std::string> labels)
    : dims_(std::move(factor_dims)), labels_(std::move(labels)) {
  if (dims_.empty()) {
    throw std::invalid_argument("CompositeSpace requires at least one factor");
  }
  if (!labels_.empty() && labels_.size() != dims_.size()) {
    throw std::invalid_argument("label count must match factor count");
  }
  for (std::size_t d : dims_) {
    if (d < 1) {
      throw std::invalid_argument("factor dimensions must be >= 1");
    }
    if (total_ > kMaxDenseDim / d) {
      throw std::invalid_argument("total dimension exceeds the dense cap of " +
                                  std::to_string(kMaxDenseDim));
    }
    total_ *= d;
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 1;) {
    strides_[k - 1] = strides_[k] * dims_[k];
  }
}

CompositeSpace CompositeSpace::single(std::size_t dim, std::string label) {
  std::vector<std::string> labels;
  if (!label.empty()) labels.push_back(std::move(label));
  return CompositeSpace({dim}, std::move(labels));
}

CompositeSpace CompositeSpace::qubits(std::size_t count) {
  return CompositeSpace(std::vector<std::size_t>(count, 2));
}

std::size_t CompositeSpace::stride(std::size_t factor) const {
  if (factor >= dims_.size()) {
    throw std::out_of_range("factor index out of range");
  }
  return strides_[factor];
}

std::size_t CompositeSpace::flat_index(std::span<const std::size_t> multi) const {
  if (multi.size() != dims_.size()) {
    throw std::invalid_argument("multi-index length must match factor count");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] >= dims_[k]) {
      throw std::out_of_range("multi-index component out of range");
    }
    flat += multi[k] * strides_[k];
  }
  return flat;
}

std::vector<std::size_t> CompositeSpace::multi_index(std::size_t flat) const {
  if (flat >= total_) {
    throw std::out_of_range("flat index out of range");
  }
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    multi[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return multi;
}

CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b) {
  std::vector<std::size_t> dims = a.factor_dims();
  dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
  std::vector<std::string> labels;
  if (!a.labels().empty() || !b.labels().empty()) {
    labels = a.labels();
    labels.resize(a.num_factors());
    const auto& bl = b.labels();
    for (std::size_t k = 0; k < b.num_factors(); ++k) {
      labels.push_back(k < bl.size() ? bl[k] : std::string{});
    }
  }
  return CompositeSpace(std::move(dims), std::move(labels));
}

CompositeSpace subspace(const CompositeSpace& s, std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("keep set must be nonempty");
  }
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t k : keep) {
    if (k >= s.num_factors()) {
      throw std::out_of_range("factor index out of range");
    }
    dims.push_back(s.factor_dims()[k]);
    if (!s.labels().empty()) labels.push_back(s.labels()[k]);
  }
  return CompositeSpace(std::move(dims), std::move(labels));
}

}  // namespace decolab
