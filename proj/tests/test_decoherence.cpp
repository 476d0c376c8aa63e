#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "decolab/decoherence.hpp"
#include "decolab/hilbert.hpp"
#include "test_util.hpp"

using namespace decolab;
using namespace decolab::testutil;

namespace {

const double kPi = std::acos(-1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityMatrix dense_reduced(Complex cp, Complex cm, const PointerModel& model) {
  const StateVector psi = decoherence::premeasure(cp, cm, model);
  const std::size_t keep[] = {0};
  return hilbert::partial_trace(hilbert::outer_product(psi), keep);
}

}  // namespace

TEST_CASE("pointer states") {
  SUBCASE("theta = 0 leaves every particle in |0>") {
    const auto [plus, minus] = decoherence::pointer_states(PointerModel::symmetric(4, 0.0));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(plus.particles[i][0] == Complex{1.0, 0.0});
      CHECK(plus.particles[i][1] == Complex{0.0, 0.0});
      CHECK(minus.particles[i][0] == Complex{1.0, 0.0});
      CHECK(minus.particles[i][1] == Complex{0.0, 0.0});
    }
  }
  SUBCASE("theta = pi gives opposite |1>-directions with overlap -1") {
    const PointerModel model = PointerModel::symmetric(1, kPi);
    const auto [plus, minus] = decoherence::pointer_states(model);
    CHECK(std::abs(plus.particles[0][1] - Complex{1.0, 0.0}) <= 1e-15);
    CHECK(std::abs(minus.particles[0][1] + Complex{1.0, 0.0}) <= 1e-15);
    CHECK(decoherence::pointer_overlap(model).overlap == Complex{-1.0, 0.0});
  }
  SUBCASE("theta = pi/2 gives exactly orthogonal pointer states") {
    const PointerModel model = PointerModel::symmetric(1, kPi / 2.0);
    CHECK(decoherence::pointer_overlap(model).overlap == Complex{0.0, 0.0});
  }
  SUBCASE("both product states are normalized") {
    const auto [plus, minus] = decoherence::pointer_states(PointerModel::symmetric(3, 1.1));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(plus.particles[i].is_normalized());
      CHECK(minus.particles[i].is_normalized());
    }
  }
}

TEST_CASE("pointer overlap") {
  SUBCASE("cos(pi/3) to the fourth power") {
    const OverlapReport report =
        decoherence::pointer_overlap(PointerModel::symmetric(4, kPi / 3.0));
    CHECK(std::abs(report.overlap - Complex{0.0625, 0.0}) <= 1e-12);
    CHECK(report.per_particle_factors.size() == 4);
  }
  SUBCASE("one orthogonal factor annihilates the product") {
    const OverlapReport report =
        decoherence::pointer_overlap(PointerModel::symmetric(7, kPi / 2.0));
    CHECK(report.overlap == Complex{0.0, 0.0});
    CHECK(report.log_magnitude == -std::numeric_limits<double>::infinity());
  }
  SUBCASE("decay base 0.9 over twenty particles") {
    const OverlapReport report =
        decoherence::pointer_overlap(PointerModel::from_cos_theta(20, 0.9));
    CHECK(std::abs(report.overlap.real() - 0.12157665459056935) <= 1e-12);
    CHECK(report.log_magnitude == doctest::Approx(20.0 * std::log(0.9)).epsilon(1e-14));
  }
  SUBCASE("overlap equals the product of the per-particle factors") {
    SequenceRng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::pair<StateVector, StateVector>> pairs;
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 6.0));
      for (std::size_t i = 0; i < n; ++i) {
        pairs.emplace_back(random_state(rng, CompositeSpace({3})),
                           random_state(rng, CompositeSpace({3})));
      }
      const OverlapReport report =
          decoherence::pointer_overlap(PointerModel::general(std::move(pairs)));
      const Complex product = std::accumulate(
          report.per_particle_factors.begin(), report.per_particle_factors.end(),
          Complex{1.0, 0.0}, std::multiplies<>());
      if (std::abs(report.overlap) > 0.0) {
        CHECK(std::abs(report.overlap - product) <= 1e-12 * std::abs(product));
      }
      CHECK(std::abs(report.overlap) <= 1.0);
    }
  }
  SUBCASE("product value is association-order independent") {
    SequenceRng rng(43);
    std::vector<std::pair<StateVector, StateVector>> pairs;
    for (std::size_t i = 0; i < 12; ++i) {
      pairs.emplace_back(random_state(rng, CompositeSpace({2})),
                         random_state(rng, CompositeSpace({2})));
    }
    const OverlapReport report =
        decoherence::pointer_overlap(PointerModel::general(std::move(pairs)));
    Complex reversed{1.0, 0.0};
    for (auto it = report.per_particle_factors.rbegin();
         it != report.per_particle_factors.rend(); ++it) {
      reversed *= *it;
    }
    CHECK(std::abs(report.overlap - reversed) <= 1e-12);
  }
  SUBCASE("log form survives products that underflow") {
    const OverlapReport report =
        decoherence::pointer_overlap(PointerModel::from_cos_theta(800, 0.25));
    CHECK(report.overlap == Complex{0.0, 0.0});  // underflows
    CHECK(report.log_magnitude == doctest::Approx(800.0 * std::log(0.25)).epsilon(1e-14));
  }
}

TEST_CASE("premeasure") {
  SUBCASE("single branch input stays a product state") {
    const PointerModel model = PointerModel::symmetric(3, 0.7);
    const StateVector psi = decoherence::premeasure(Complex{1.0, 0.0}, Complex{0.0, 0.0}, model);
    // Matches |+> (x) |M+> built by explicit tensor products.
    StateVector expected = StateVector::qubit(1.0, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      expected = hilbert::tensor_product(expected, model.plus_state(i));
    }
    CHECK(max_complex_diff(psi.amplitudes(), expected.amplitudes()) <= 1e-15);
    CHECK(psi.space().factor_dims() == std::vector<std::size_t>{2, 2, 2, 2});
  }
  SUBCASE("theta = 0 generates no entanglement") {
    const StateVector psi = decoherence::premeasure(
        Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}, PointerModel::symmetric(2, 0.0));
    // (|+> + |->)/sqrt(2) (x) |00>: only the k=0 slot of each branch block.
    CHECK(std::abs(psi[0] - Complex{kInvSqrt2, 0.0}) <= 1e-15);
    CHECK(std::abs(psi[4] - Complex{kInvSqrt2, 0.0}) <= 1e-15);
    for (std::size_t k : {1u, 2u, 3u, 5u, 6u, 7u}) CHECK(std::abs(psi[k]) == 0.0);
  }
  SUBCASE("orthogonal single particle branch expands to the known four amplitudes") {
    const StateVector psi =
        decoherence::premeasure(Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0},
                                PointerModel::symmetric(1, kPi / 2.0));
    CHECK(std::abs(psi[0] - Complex{0.5, 0.0}) <= 1e-12);
    CHECK(std::abs(psi[1] - Complex{0.5, 0.0}) <= 1e-12);
    CHECK(std::abs(psi[2] - Complex{0.5, 0.0}) <= 1e-12);
    CHECK(std::abs(psi[3] + Complex{0.5, 0.0}) <= 1e-12);
  }
  SUBCASE("output is normalized for any valid amplitudes") {
    SequenceRng rng(45);
    for (int rep = 0; rep < 10; ++rep) {
      const auto [cp, cm] = random_amplitudes(rng);
      const StateVector psi =
          decoherence::premeasure(cp, cm, PointerModel::symmetric(5, rng.uniform(0.0, kPi)));
      CHECK(std::abs(psi.norm() - 1.0) <= kStructuralTol);
    }
  }
  SUBCASE("rejects environments beyond the dense cap") {
    CHECK_THROWS_AS(decoherence::premeasure(Complex{1.0, 0.0}, Complex{0.0, 0.0},
                                            PointerModel::symmetric(12, 0.5)),
                    DenseCapError);
    // N = 11 is the largest dense environment: 2 * 2^11 = 4096.
    CHECK(PointerModel::symmetric(11, 0.5).dense_dim() == 4096);
    CHECK_FALSE(PointerModel::symmetric(12, 0.5).dense_dim().has_value());
  }
  SUBCASE("rejects non-normalized amplitudes") {
    CHECK_THROWS_AS(decoherence::premeasure(Complex{1.0, 0.0}, Complex{0.5, 0.0},
                                            PointerModel::symmetric(2, 0.5)),
                    std::invalid_argument);
  }
}

TEST_CASE("reduced system density") {
  SUBCASE("orthogonal pointers give the maximal mixture for equal amplitudes") {
    for (std::size_t n : {1u, 3u, 40u}) {
      const DensityMatrix rho = decoherence::reduced_system_density(
          Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0},
          PointerModel::symmetric(n, kPi / 2.0));
      CHECK(std::abs(rho.at(0, 0) - Complex{0.5, 0.0}) <= 1e-15);
      CHECK(std::abs(rho.at(1, 1) - Complex{0.5, 0.0}) <= 1e-15);
      CHECK(rho.at(0, 1) == Complex{0.0, 0.0});
      CHECK(rho.at(1, 0) == Complex{0.0, 0.0});
    }
  }
  SUBCASE("two particles at pi/3 leave off-diagonal 1/8") {
    const DensityMatrix rho = decoherence::reduced_system_density(
        Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0},
        PointerModel::symmetric(2, kPi / 3.0));
    CHECK(std::abs(rho.at(0, 1)) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(rho.purity() == doctest::Approx(0.53125).epsilon(1e-12));
  }
  SUBCASE("single branch stays pure") {
    const DensityMatrix rho = decoherence::reduced_system_density(
        Complex{1.0, 0.0}, Complex{0.0, 0.0}, PointerModel::symmetric(6, 2.0));
    CHECK(rho.at(0, 0) == Complex{1.0, 0.0});
    CHECK(rho.at(1, 1) == Complex{0.0, 0.0});
    CHECK(rho.at(0, 1) == Complex{0.0, 0.0});
    CHECK(rho.purity() == 1.0);
  }
  SUBCASE("off-diagonal carries <M-|M+> with the printed phase convention") {
    // Complex per-particle states so the overlap phase is nontrivial.
    SequenceRng rng(47);
    std::vector<std::pair<StateVector, StateVector>> pairs;
    for (std::size_t i = 0; i < 3; ++i) {
      pairs.emplace_back(random_state(rng, CompositeSpace({2})),
                         random_state(rng, CompositeSpace({2})));
    }
    const PointerModel model = PointerModel::general(std::move(pairs));
    const auto [mp, mm] = decoherence::pointer_states(model);
    const Complex overlap_mp = product_overlap(mm, mp);  // <M-|M+>
    const auto [cp, cm] = random_amplitudes(rng);
    const DensityMatrix rho = decoherence::reduced_system_density(cp, cm, model);
    CHECK(std::abs(rho.at(0, 1) - cp * std::conj(cm) * overlap_mp) <= 1e-12);
    CHECK(std::abs(rho.at(1, 0) - cm * std::conj(cp) * std::conj(overlap_mp)) <= 1e-12);
  }
  SUBCASE("matches the dense path for every N up to the cap") {
    SequenceRng rng(49);
    for (std::size_t n = 1; n <= 11; ++n) {
      const double theta = rng.uniform(0.05, kPi - 0.05);
      const auto [cp, cm] = random_amplitudes(rng);
      const PointerModel model = PointerModel::symmetric(n, theta);
      const DensityMatrix analytic = decoherence::reduced_system_density(cp, cm, model);
      CHECK(max_entry_distance(analytic, dense_reduced(cp, cm, model)) <= kStructuralTol);
    }
  }
  SUBCASE("matches the dense path for general per-particle dimensions") {
    SequenceRng rng(51);
    std::vector<std::pair<StateVector, StateVector>> pairs;
    for (std::size_t dim : {2u, 3u, 4u}) {
      pairs.emplace_back(random_state(rng, CompositeSpace({dim})),
                         random_state(rng, CompositeSpace({dim})));
    }
    const PointerModel model = PointerModel::general(std::move(pairs));
    const auto [cp, cm] = random_amplitudes(rng);
    const DensityMatrix analytic = decoherence::reduced_system_density(cp, cm, model);
    CHECK(max_entry_distance(analytic, dense_reduced(cp, cm, model)) <= kStructuralTol);
  }
  SUBCASE("diagonal is fixed by the amplitudes alone") {
    SequenceRng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
      const auto [cp, cm] = random_amplitudes(rng);
      const PointerModel model =
          PointerModel::symmetric(1 + rep % 7, rng.uniform(0.0, kPi));
      const DensityMatrix rho = decoherence::reduced_system_density(cp, cm, model);
      CHECK(std::abs(rho.at(0, 0).real() - std::norm(cp)) <= kStructuralTol);
      CHECK(std::abs(rho.at(1, 1).real() - std::norm(cm)) <= kStructuralTol);
    }
  }
}

TEST_CASE("exponential decay of the branch overlap") {
  SUBCASE("log overlap is exactly N log cos theta for symmetric models") {
    const double theta = 0.64;
    const double base = std::abs(PointerModel::symmetric(1, theta).per_particle_factor(0).real());
    for (std::size_t n : {1u, 5u, 17u, 60u}) {
      const OverlapReport report =
          decoherence::pointer_overlap(PointerModel::symmetric(n, theta));
      CHECK(report.log_magnitude == static_cast<double>(n) * std::log(base));
    }
  }
  SUBCASE("least-squares slope over N = 1..20 recovers log cos theta") {
    const double cos_theta = 0.9;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 1; n <= 20; ++n) {
      const OverlapReport report =
          decoherence::pointer_overlap(PointerModel::from_cos_theta(n, cos_theta));
      sx += n;
      sy += report.log_magnitude;
      sxx += double(n) * n;
      sxy += n * report.log_magnitude;
    }
    const double slope = (20.0 * sxy - sx * sy) / (20.0 * sxx - sx * sx);
    CHECK(std::abs(slope - std::log(cos_theta)) <= 1e-9);
  }
}

TEST_CASE("purity interpolation between pure and fully decohered") {
  SequenceRng rng(55);
  const auto [cp, cm] = random_amplitudes(rng);
  const double floor_purity = std::norm(cp) * std::norm(cp) + std::norm(cm) * std::norm(cm);

  SUBCASE("aligned pointers keep the state pure") {
    const DensityMatrix rho =
        decoherence::reduced_system_density(cp, cm, PointerModel::symmetric(8, 0.0));
    CHECK(std::abs(rho.purity() - 1.0) <= kStructuralTol);
  }
  SUBCASE("orthogonal pointers reach |c+|^4 + |c-|^4") {
    const DensityMatrix rho = decoherence::reduced_system_density(
        cp, cm, PointerModel::symmetric(8, kPi / 2.0));
    CHECK(std::abs(rho.purity() - floor_purity) <= kStructuralTol);
  }
  SUBCASE("closed form holds in between") {
    for (double theta : {0.3, 0.9, 1.4}) {
      const PointerModel model = PointerModel::symmetric(4, theta);
      const DensityMatrix rho = decoherence::reduced_system_density(cp, cm, model);
      const double r = std::abs(decoherence::pointer_overlap(model).overlap);
      const double expected =
          floor_purity + 2.0 * std::norm(cp) * std::norm(cm) * r * r;
      CHECK(rho.purity() == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("entangled reductions are strictly mixed") {
    for (double theta : {0.2, 0.8, 1.5, 2.4}) {
      const DensityMatrix rho = decoherence::reduced_system_density(
          Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0},
          PointerModel::symmetric(3, theta));
      CHECK(rho.purity() < 1.0);
    }
  }
}

TEST_CASE("common unitaries preserve branch overlaps") {
  SUBCASE("identity leaves the branches unchanged") {
    const PointerModel model = PointerModel::symmetric(3, 0.8);
    const auto branches = decoherence::pointer_states(model);
    const std::vector<Operator> ids(3, Operator::identity(CompositeSpace({2})));
    const auto rotated = decoherence::apply_common_unitary(branches, ids);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(max_complex_diff(rotated.first.particles[i].amplitudes(),
                             branches.first.particles[i].amplitudes()) == 0.0);
      CHECK(max_complex_diff(rotated.second.particles[i].amplitudes(),
                             branches.second.particles[i].amplitudes()) == 0.0);
    }
  }
  SUBCASE("random unitaries keep the overlap at cos(pi/3)^4") {
    SequenceRng rng(57);
    const PointerModel model = PointerModel::symmetric(4, kPi / 3.0);
    const auto branches = decoherence::pointer_states(model);
    std::vector<Operator> us;
    for (int i = 0; i < 4; ++i) us.push_back(random_unitary(rng, 2));
    const auto rotated = decoherence::apply_common_unitary(branches, us);
    const Complex overlap = product_overlap(rotated.second, rotated.first);
    CHECK(std::abs(std::abs(overlap) - 0.0625) <= 1e-12);
  }
  SUBCASE("sigma_x preserves orthogonality") {
    const PointerModel model = PointerModel::symmetric(1, kPi / 2.0);
    const auto branches = decoherence::pointer_states(model);
    const auto rotated = decoherence::apply_common_unitary(branches, {pauli_x()});
    CHECK(std::abs(product_overlap(rotated.second, rotated.first)) <= 1e-12);
  }
  SUBCASE("overlap magnitude is invariant across 100 random cases") {
    SequenceRng rng(59);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 5.0));
      std::vector<std::pair<StateVector, StateVector>> pairs;
      for (std::size_t i = 0; i < n; ++i) {
        pairs.emplace_back(random_state(rng, CompositeSpace({2})),
                           random_state(rng, CompositeSpace({2})));
      }
      const PointerModel model = PointerModel::general(std::move(pairs));
      const auto branches = decoherence::pointer_states(model);
      const double before = std::abs(product_overlap(branches.first, branches.second));
      std::vector<Operator> us;
      for (std::size_t i = 0; i < n; ++i) us.push_back(random_unitary(rng, 2));
      const auto rotated = decoherence::apply_common_unitary(branches, us);
      const double after = std::abs(product_overlap(rotated.first, rotated.second));
      CHECK(std::abs(after - before) <= 1e-12);
    }
  }
  SUBCASE("rejects non-unitary factors and mismatched lengths") {
    const PointerModel model = PointerModel::symmetric(2, 0.4);
    const auto branches = decoherence::pointer_states(model);
    CHECK_THROWS_AS(decoherence::apply_common_unitary(
                        branches, {Operator::identity(CompositeSpace({2}))}),
                    std::invalid_argument);
    const Operator half(CompositeSpace({2}), {Complex{0.5, 0.0}, Complex{0.0, 0.0},
                                              Complex{0.0, 0.0}, Complex{0.5, 0.0}});
    CHECK_THROWS_AS(decoherence::apply_common_unitary(branches, {half, half}),
                    std::invalid_argument);
  }
}

TEST_CASE("branch state bookkeeping") {
  const PointerModel model = PointerModel::symmetric(5, 0.9);
  const auto [mp, mm] = decoherence::pointer_states(model);
  const BranchState plus{BranchLabel::plus, Complex{kInvSqrt2, 0.0}, mp};
  const BranchState minus{BranchLabel::minus, Complex{kInvSqrt2, 0.0}, mm};
  CHECK(plus.environment.size() == model.n_particles());
  CHECK(minus.environment.size() == model.n_particles());
  CHECK(std::abs(std::norm(plus.amplitude) + std::norm(minus.amplitude) - 1.0) <= 1e-12);
  CHECK(std::abs(plus.amplitude) <= 1.0);
}
