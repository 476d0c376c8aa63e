#include "decolab/decoherence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "decolab/hilbert.hpp"

namespace decolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unit-normalizes (c+, c-) after checking the kSpectralTol gate.
std::pair<Complex, Complex> checked_amplitudes(Complex c_plus, Complex c_minus) {
  const double total = std::norm(c_plus) + std::norm(c_minus);
  if (std::abs(total - 1.0) > kSpectralTol) {
    throw std::invalid_argument(
        "branch amplitudes must satisfy |c+|^2 + |c-|^2 = 1 within 1e-8");
  }
  const double scale = 1.0 / std::sqrt(total);
  return {c_plus * scale, c_minus * scale};
}

}  // namespace

Complex product_overlap(const ProductState& a, const ProductState& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("product states must have the same particle count");
  }
  Complex acc{1.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc *= inner(a.particles[i], b.particles[i]);
  return acc;
}

double OverlapReport::magnitude() const { return std::abs(overlap); }

PointerModel PointerModel::symmetric(std::size_t n_particles, double theta) {
  if (n_particles < 1) {
    throw std::invalid_argument("pointer model requires at least one particle");
  }
  double cos_theta = std::cos(theta);
  if (std::abs(cos_theta) < kOrthogonalSnapTol) cos_theta = 0.0;

  PointerModel model;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const StateVector plus = StateVector::qubit(Complex{c, 0.0}, Complex{s, 0.0});
  const StateVector minus = StateVector::qubit(Complex{c, 0.0}, Complex{-s, 0.0});
  model.states_.assign(n_particles, {plus, minus});
  model.symmetric_angle_ = theta;
  model.symmetric_cos_ = cos_theta;
  return model;
}

PointerModel PointerModel::from_cos_theta(std::size_t n_particles, double cos_theta) {
  if (!(cos_theta >= -1.0 && cos_theta <= 1.0)) {
    throw std::invalid_argument("cos(theta) must lie in [-1, 1]");
  }
  PointerModel model = symmetric(n_particles, std::acos(cos_theta));
  model.symmetric_cos_ = cos_theta;
  return model;
}

PointerModel PointerModel::general(
    std::vector<std::pair<StateVector, StateVector>> conditional_states) {
  if (conditional_states.empty()) {
    throw std::invalid_argument("pointer model requires at least one particle");
  }
  for (const auto& [plus, minus] : conditional_states) {
    if (plus.space().num_factors() != 1 || minus.space().num_factors() != 1) {
      throw std::invalid_argument("conditional states must live on a single factor");
    }
    if (plus.dim() < 2 || plus.dim() != minus.dim()) {
      throw std::invalid_argument(
          "conditional state pair must share one dimension >= 2");
    }
    if (!plus.is_normalized() || !minus.is_normalized()) {
      throw std::invalid_argument("conditional states must be normalized");
    }
  }
  PointerModel model;
  model.states_ = std::move(conditional_states);
  return model;
}

Complex PointerModel::per_particle_factor(std::size_t i) const {
  if (symmetric_cos_) return Complex{*symmetric_cos_, 0.0};
  return inner(states_[i].second, states_[i].first);
}

std::optional<std::size_t> PointerModel::dense_dim() const {
  std::size_t total = 2;
  for (const auto& [plus, minus] : states_) {
    if (total > kMaxDenseDim / plus.dim()) return std::nullopt;
    total *= plus.dim();
  }
  return total;
}

namespace decoherence {

std::pair<ProductState, ProductState> pointer_states(const PointerModel& model) {
  ProductState plus, minus;
  plus.particles.reserve(model.n_particles());
  minus.particles.reserve(model.n_particles());
  for (std::size_t i = 0; i < model.n_particles(); ++i) {
    plus.particles.push_back(model.plus_state(i));
    minus.particles.push_back(model.minus_state(i));
  }
  return {std::move(plus), std::move(minus)};
}

OverlapReport pointer_overlap(const PointerModel& model) {
  const std::size_t n = model.n_particles();
  OverlapReport report;
  report.per_particle_factors.reserve(n);

  Complex product{1.0, 0.0};
  bool annihilated = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex factor = model.per_particle_factor(i);
    report.per_particle_factors.push_back(factor);
    product *= factor;
    if (factor == Complex{0.0, 0.0}) annihilated = true;
  }
  // Normalized inputs bound the true overlap by 1; shave off any roundoff
  // excess so downstream log/purity formulas stay in range.
  if (std::abs(product) > 1.0) product /= std::abs(product);
  report.overlap = product;

  // The log form is computed from the factors, not from the product, so it
  // stays finite even when the product underflows.
  if (annihilated) {
    report.log_magnitude = -kInf;
  } else if (model.is_symmetric()) {
    report.log_magnitude =
        static_cast<double>(n) * std::log(std::abs(report.per_particle_factors[0]));
  } else {
    double acc = 0.0;
    for (const Complex& factor : report.per_particle_factors) {
      acc += std::log(std::abs(factor));
    }
    report.log_magnitude = acc;
  }
  return report;
}

StateVector premeasure(Complex c_plus, Complex c_minus, const PointerModel& model) {
  const auto dense = model.dense_dim();
  if (!dense) {
    throw DenseCapError(
        "premeasured state exceeds the dense cap of " + std::to_string(kMaxDenseDim) +
        "; use the product-form/closed-form path");
  }
  const auto [cp, cm] = checked_amplitudes(c_plus, c_minus);

  const std::size_t n = model.n_particles();
  const std::size_t env_dim = *dense / 2;

  // Expand each branch's environment product state left to right.
  std::vector<Complex> plus_env{Complex{1.0, 0.0}};
  std::vector<Complex> minus_env{Complex{1.0, 0.0}};
  std::vector<std::size_t> env_dims;
  env_dims.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& plus_i = model.plus_state(i).amplitudes();
    const auto& minus_i = model.minus_state(i).amplitudes();
    std::vector<Complex> next_plus(plus_env.size() * plus_i.size());
    std::vector<Complex> next_minus(minus_env.size() * minus_i.size());
    kernels::tensor(plus_env.data(), plus_env.size(), plus_i.data(), plus_i.size(),
                    next_plus.data());
    kernels::tensor(minus_env.data(), minus_env.size(), minus_i.data(), minus_i.size(),
                    next_minus.data());
    plus_env = std::move(next_plus);
    minus_env = std::move(next_minus);
    env_dims.push_back(plus_i.size());
  }

  std::vector<std::size_t> dims{2};
  dims.insert(dims.end(), env_dims.begin(), env_dims.end());
  std::vector<std::string> labels(dims.size());
  labels[0] = "system";

  std::vector<Complex> amps(*dense);
  for (std::size_t k = 0; k < env_dim; ++k) {
    amps[k] = cp * plus_env[k];
    amps[env_dim + k] = cm * minus_env[k];
  }
  return StateVector(CompositeSpace(std::move(dims), std::move(labels)),
                     std::move(amps));
}

DensityMatrix reduced_system_density(Complex c_plus, Complex c_minus,
                                     const PointerModel& model) {
  checked_amplitudes(c_plus, c_minus);
  // Probabilities as exact ratios: for equal amplitudes the diagonal is 0.5
  // even when |c|^2 itself rounds away from it.
  const double total = std::norm(c_plus) + std::norm(c_minus);
  const double prob_plus = std::norm(c_plus) / total;
  const double prob_minus = std::norm(c_minus) / total;
  const Complex overlap_minus_plus = pointer_overlap(model).overlap;  // <M-|M+>
  const Complex off = (c_plus * std::conj(c_minus) / total) * overlap_minus_plus;
  std::vector<Complex> entries{Complex{prob_plus, 0.0}, off,  //
                               std::conj(off), Complex{prob_minus, 0.0}};
  return DensityMatrix(CompositeSpace({2}, {"system"}), std::move(entries));
}

std::pair<ProductState, ProductState> apply_common_unitary(
    const std::pair<ProductState, ProductState>& branches,
    const std::vector<Operator>& per_particle_unitaries) {
  const auto& [first, second] = branches;
  if (first.size() != second.size() || per_particle_unitaries.size() != first.size()) {
    throw std::invalid_argument("unitary sequence length must match the particle count");
  }
  ProductState out_first, out_second;
  out_first.particles.reserve(first.size());
  out_second.particles.reserve(second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    const Operator& u = per_particle_unitaries[i];
    if (u.dim() != first.particles[i].dim() || u.dim() != second.particles[i].dim()) {
      throw std::invalid_argument("unitary dimension mismatch at particle " +
                                  std::to_string(i));
    }
    if (!u.is_unitary()) {
      throw std::invalid_argument("operator at particle " + std::to_string(i) +
                                  " is not unitary within tolerance");
    }
    out_first.particles.push_back(apply(u, first.particles[i]));
    out_second.particles.push_back(apply(u, second.particles[i]));
  }
  return {std::move(out_first), std::move(out_second)};
}

}  // namespace decoherence
}  // namespace decolab
