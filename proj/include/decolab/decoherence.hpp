#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "decolab/types.hpp"

namespace decolab {

// Raised when a dense construction would exceed kMaxDenseDim; callers should
// switch to the product-form / closed-form path.
class DenseCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product-form state of n distinguishable particles. Each particle carries
/// its own small factor, so n can reach hundreds without 2^n storage.
struct ProductState {
  std::vector<StateVector> particles;

  std::size_t size() const { return particles.size(); }
};

// Product of single-particle inner products: prod_i <a_i|b_i>.
Complex product_overlap(const ProductState& a, const ProductState& b);

enum class BranchLabel { plus, minus };

/// One component of the post-measurement superposition: outcome label,
/// amplitude, and the environment state conditioned on that outcome.
struct BranchState {
  BranchLabel label;
  Complex amplitude;
  ProductState environment;
};

/// The branch overlap <M-|M+> together with its per-particle factorization.
struct OverlapReport {
  Complex overlap;
  double log_magnitude;  // ln|overlap|; -inf when the overlap is exactly zero
  std::vector<Complex> per_particle_factors;

  double magnitude() const;
};

/// N environment/apparatus particles with branch-conditional single-particle
/// states (e+_i, e-_i).
///
/// The symmetric model rotates every particle by the same angle,
///   e+-_i = cos(theta/2)|0> +- sin(theta/2)|1>,
/// giving the closed-form per-particle overlap <e-_i|e+_i> = cos(theta) and
/// the branch overlap (cos theta)^N. A |cos theta| below kOrthogonalSnapTol is
/// treated as exact orthogonality: a double-valued theta that close to pi/2 is
/// indistinguishable from it.
class PointerModel {
 public:
  static PointerModel symmetric(std::size_t n_particles, double theta);
  // Same model parameterized directly by the decay base cos(theta); the given
  // value is used verbatim as the closed-form per-particle overlap.
  static PointerModel from_cos_theta(std::size_t n_particles, double cos_theta);
  // Arbitrary per-particle conditional state pairs (e+_i, e-_i); each state
  // must live on a single factor of dimension >= 2 and be normalized.
  static PointerModel general(
      std::vector<std::pair<StateVector, StateVector>> conditional_states);

  std::size_t n_particles() const { return states_.size(); }
  bool is_symmetric() const { return symmetric_angle_.has_value(); }
  std::optional<double> symmetric_angle() const { return symmetric_angle_; }

  const StateVector& plus_state(std::size_t i) const { return states_[i].first; }
  const StateVector& minus_state(std::size_t i) const { return states_[i].second; }

  // Closed-form <e-_i|e+_i> for symmetric models; the literal inner product
  // otherwise.
  Complex per_particle_factor(std::size_t i) const;

  // Dimension of the dense premeasured space 2 * prod_i d_i, or nullopt when
  // it exceeds kMaxDenseDim.
  std::optional<std::size_t> dense_dim() const;

 private:
  PointerModel() = default;

  std::vector<std::pair<StateVector, StateVector>> states_;
  std::optional<double> symmetric_angle_;
  std::optional<double> symmetric_cos_;
};

namespace decoherence {

// The pointer states (M+, M-) as product-form sequences (e+-_1, ..., e+-_N).
std::pair<ProductState, ProductState> pointer_states(const PointerModel& model);

// <M-|M+> as a product of single-particle inner products; never builds a
// 2^N-dimensional vector.
OverlapReport pointer_overlap(const PointerModel& model);

// Dense c+ |+>(x)|M+> + c- |->(x)|M-> over (2, d_1, ..., d_N) with the system
// factor first. Requires the dense dimension within kMaxDenseDim; amplitudes
// must satisfy |c+|^2 + |c-|^2 = 1 within kSpectralTol and are used
// unit-normalized.
StateVector premeasure(Complex c_plus, Complex c_minus, const PointerModel& model);

// The analytic reduced system state
//   [[|c+|^2,            c+ conj(c-) <M-|M+>],
//    [c- conj(c+) <M+|M->,            |c-|^2]]
// computed via the closed-form overlap, valid for any N.
DensityMatrix reduced_system_density(Complex c_plus, Complex c_minus,
                                     const PointerModel& model);

// Applies the same per-particle unitary u_i to particle i of both branches.
// Inner products are exactly invariant under this, so the branch overlap is
// preserved.
std::pair<ProductState, ProductState> apply_common_unitary(
    const std::pair<ProductState, ProductState>& branches,
    const std::vector<Operator>& per_particle_unitaries);

}  // namespace decoherence
}  // namespace decolab
