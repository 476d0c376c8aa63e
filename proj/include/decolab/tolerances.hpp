#pragma once

#include <cstddef>

namespace decolab {

// Structural tolerance: Hermiticity, trace and norm checks.
inline constexpr double kStructuralTol = 1e-10;

// Spectral tolerance: positivity and purity classification.
inline constexpr double kSpectralTol = 1e-8;

// Dense storage is capped at 12 qubit-equivalent factors. Larger environments
// must use the product-form path, which never materializes the full space.
inline constexpr std::size_t kMaxDenseDim = 4096;

// A per-particle overlap cos(theta) below this magnitude cannot be resolved
// from exact orthogonality when theta itself is a double near pi/2, so it is
// snapped to zero (orthogonal pointer states, log-overlap = -inf).
inline constexpr double kOrthogonalSnapTol = 1e-15;

}  // namespace decolab
