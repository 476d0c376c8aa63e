#include "decolab/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "decolab/decoherence.hpp"
#include "decolab/experiments.hpp"
#include "decolab/hilbert.hpp"
#include "decolab/io.hpp"
#include "decolab/rng.hpp"

namespace decolab {

namespace {

Complex random_unit_complex(SequenceRng& rng) {
  const double phase = rng.uniform(0.0, 6.283185307179586);
  return std::polar(1.0, phase);
}

StateVector random_state(SequenceRng& rng, CompositeSpace space) {
  std::vector<Complex> amps(space.total_dim());
  for (Complex& a : amps) {
    a = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  StateVector psi(std::move(space), std::move(amps));
  return psi.normalize();
}

Operator random_hermitian(SequenceRng& rng, std::size_t dim) {
  CompositeSpace space({dim});
  std::vector<Complex> entries(dim * dim);
  for (Complex& e : entries) {
    e = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  Operator raw(space, std::move(entries));
  Operator adj = raw.adjoint();
  std::vector<Complex> sym(dim * dim);
  for (std::size_t k = 0; k < sym.size(); ++k) {
    sym[k] = 0.5 * (raw.entries()[k] + adj.entries()[k]);
  }
  return Operator(space, std::move(sym));
}

Operator random_unitary(SequenceRng& rng, std::size_t dim) {
  return hilbert::evolution_operator(random_hermitian(rng, dim), 1.0);
}

std::pair<Complex, Complex> random_amplitudes(SequenceRng& rng) {
  const double p = rng.uniform(0.05, 0.95);
  return {std::sqrt(p) * random_unit_complex(rng),
          std::sqrt(1.0 - p) * random_unit_complex(rng)};
}

DensityMatrix random_density(SequenceRng& rng, const CompositeSpace& space,
                             std::size_t rank) {
  const std::size_t d = space.total_dim();
  std::vector<double> weights(rank);
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform(0.1, 1.0);
    total += w;
  }
  std::vector<Complex> entries(d * d, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < rank; ++r) {
    const DensityMatrix pure = hilbert::outer_product(random_state(rng, space));
    const double w = weights[r] / total;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      entries[k] += w * pure.entries()[k];
    }
  }
  return DensityMatrix(space, std::move(entries));
}

class Harness {
 public:
  explicit Harness(std::ostream& out) : out_(out) {}

  void check(const char* name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out_ << (ok ? "[ ok ] " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) out_ << " (" << detail << ")";
    out_ << '\n';
    all_ok_ = all_ok_ && ok;
  }

  bool all_ok() const { return all_ok_; }

 private:
  std::ostream& out_;
  bool all_ok_ = true;
};

}  // namespace

bool run_selftest(std::ostream& out) {
  Harness h(out);

  h.check("flat index round trip", [] {
    CompositeSpace space({2, 3, 4}, {"a", "b", "c"});
    for (std::size_t flat = 0; flat < space.total_dim(); ++flat) {
      if (space.flat_index(space.multi_index(flat)) != flat) return false;
    }
    return true;
  });

  h.check("spectral evolution is unitary and norm preserving", [] {
    SequenceRng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform(0.0, 15.0));
      const Operator h_op = random_hermitian(rng, dim);
      if (hilbert::evolution_operator(h_op, rng.uniform(0.1, 3.0)).unitary_deviation() >
          kStructuralTol) {
        return false;
      }
      const StateVector psi = random_state(rng, CompositeSpace({dim}));
      const StateVector evolved = hilbert::evolve(h_op, rng.uniform(0.1, 3.0), psi);
      if (std::abs(evolved.norm() - 1.0) > kStructuralTol) return false;
    }
    return true;
  });

  h.check("evolution composes: U(t1)U(t2) = U(t1+t2)", [] {
    SequenceRng rng(12);
    const Operator h_op = random_hermitian(rng, 6);
    const StateVector psi = random_state(rng, CompositeSpace({6}));
    const double t1 = 0.7, t2 = 1.9;
    const StateVector two_step = hilbert::evolve(h_op, t1, hilbert::evolve(h_op, t2, psi));
    const StateVector one_step = hilbert::evolve(h_op, t1 + t2, psi);
    return kernels::max_abs_diff(two_step.amplitudes().data(),
                                 one_step.amplitudes().data(), psi.dim()) <= 1e-9;
  });

  h.check("partial trace preserves trace and Hermiticity", [] {
    SequenceRng rng(13);
    for (int rep = 0; rep < 25; ++rep) {
      const CompositeSpace space({2, 3, 2});
      const DensityMatrix rho = random_density(rng, space, 3);
      const std::size_t keep[] = {0, 2};
      const DensityMatrix reduced = hilbert::partial_trace(rho, keep);
      if (std::abs(reduced.trace() - Complex{1.0, 0.0}) > kStructuralTol) return false;
      if (kernels::hermitian_deviation(reduced.entries().data(), reduced.dim()) >
          kStructuralTol) {
        return false;
      }
    }
    return true;
  });

  h.check("unentangled reduction equals the factor projector", [] {
    SequenceRng rng(14);
    const StateVector a = random_state(rng, CompositeSpace({3}));
    const StateVector b = random_state(rng, CompositeSpace({4}));
    const DensityMatrix joint = hilbert::outer_product(hilbert::tensor_product(a, b));
    const std::size_t keep[] = {0};
    const DensityMatrix reduced = hilbert::partial_trace(joint, keep);
    return max_entry_distance(reduced, hilbert::outer_product(a)) <= kStructuralTol;
  });

  h.check("analytic reduced state matches the dense path", [] {
    SequenceRng rng(15);
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 8.0));
      const double theta = rng.uniform(0.05, 3.09);
      const auto [cp, cm] = random_amplitudes(rng);
      const PointerModel model = PointerModel::symmetric(n, theta);
      const DensityMatrix analytic = decoherence::reduced_system_density(cp, cm, model);
      const StateVector psi = decoherence::premeasure(cp, cm, model);
      const std::size_t keep[] = {0};
      const DensityMatrix dense =
          hilbert::partial_trace(hilbert::outer_product(psi), keep);
      if (max_entry_distance(analytic, dense) > kStructuralTol) return false;
    }
    return true;
  });

  h.check("branch overlap decays as (cos theta)^N", [] {
    const double cos_theta = 0.9;
    double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
    const int count = 20;
    for (int n = 1; n <= count; ++n) {
      const OverlapReport report =
          decoherence::pointer_overlap(PointerModel::from_cos_theta(n, cos_theta));
      sum_x += n;
      sum_y += report.log_magnitude;
      sum_xx += static_cast<double>(n) * n;
      sum_xy += n * report.log_magnitude;
    }
    const double slope =
        (count * sum_xy - sum_x * sum_y) / (count * sum_xx - sum_x * sum_x);
    return std::abs(slope - std::log(cos_theta)) <= 1e-9;
  });

  h.check("common unitaries preserve the branch overlap", [] {
    SequenceRng rng(16);
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 6.0));
      const PointerModel model = PointerModel::symmetric(n, rng.uniform(0.0, 3.14159));
      auto branches = decoherence::pointer_states(model);
      const double before = std::abs(product_overlap(branches.first, branches.second));
      std::vector<Operator> us;
      for (std::size_t i = 0; i < n; ++i) us.push_back(random_unitary(rng, 2));
      const auto rotated = decoherence::apply_common_unitary(branches, us);
      const double after = std::abs(product_overlap(rotated.first, rotated.second));
      if (std::abs(after - before) > 1e-12) return false;
    }
    return true;
  });

  h.check("reduced purity interpolates between pure and mixed", [] {
    SequenceRng rng(17);
    const auto [cp, cm] = random_amplitudes(rng);
    const DensityMatrix aligned =
        decoherence::reduced_system_density(cp, cm, PointerModel::symmetric(5, 0.0));
    if (std::abs(aligned.purity() - 1.0) > kStructuralTol) return false;
    const DensityMatrix orthogonal = decoherence::reduced_system_density(
        cp, cm, PointerModel::from_cos_theta(5, 0.0));
    const double floor_purity =
        std::norm(cp) * std::norm(cp) + std::norm(cm) * std::norm(cm);
    return std::abs(orthogonal.purity() - floor_purity) <= kStructuralTol;
  });

  h.check("decoherence suppresses only off-diagonals", [] {
    SequenceRng rng(18);
    for (int rep = 0; rep < 10; ++rep) {
      const auto [cp, cm] = random_amplitudes(rng);
      const PointerModel model =
          PointerModel::symmetric(1 + rep, rng.uniform(0.0, 3.14159));
      const DensityMatrix reduced = decoherence::reduced_system_density(cp, cm, model);
      const double scale = std::norm(cp) + std::norm(cm);
      if (std::abs(reduced.at(0, 0).real() - std::norm(cp) / scale) > kStructuralTol ||
          std::abs(reduced.at(1, 1).real() - std::norm(cm) / scale) > kStructuralTol) {
        return false;
      }
    }
    return true;
  });

  h.check("curve rows satisfy the closed-form relations", [] {
    experiments::ScenarioConfig config;
    config.theta = 1.0471975511965976;
    config.n_sweep = {{1, 16}};
    const auto points = experiments::decoherence_curve(config);
    const double weight = std::abs(config.c_plus) * std::abs(config.c_minus);
    double previous = 2.0;
    for (const auto& p : points) {
      if (std::abs(p.offdiag_magnitude - weight * p.overlap_magnitude) > 1e-12) return false;
      if (std::abs(p.purity - experiments::reduced_purity(config.c_plus, config.c_minus,
                                                          p.overlap_magnitude)) > 1e-10) {
        return false;
      }
      if (p.offdiag_magnitude >= previous) return false;
      previous = p.offdiag_magnitude;
    }
    return true;
  });

  h.check("sampling is seed-deterministic and respects certainty", [] {
    experiments::ScenarioConfig config;
    config.c_plus = Complex{1.0, 0.0};
    config.c_minus = Complex{0.0, 0.0};
    config.trials = 257;
    if (experiments::born_sample(config).frequency_plus != 1.0) return false;

    experiments::ScenarioConfig fair;
    fair.trials = 10000;
    fair.seed = 2024;
    const auto once = experiments::born_sample(fair);
    const auto twice = experiments::born_sample(fair);
    return once.count_plus == twice.count_plus && std::abs(once.z_score) < 6.0;
  });

  h.check("curve CSV round trips at 17 significant digits", [] {
    experiments::ScenarioConfig config;
    config.n_sweep = {{1, 8}};
    const auto points = experiments::decoherence_curve(config);
    std::ostringstream stream;
    io::write_curve_csv(stream, points);
    std::istringstream lines(stream.str());
    std::string line;
    std::getline(lines, line);  // header
    for (const auto& p : points) {
      std::getline(lines, line);
      const auto comma = line.find(',');
      const std::string rest = line.substr(comma + 1);
      double parsed[4];
      if (std::sscanf(rest.c_str(), "%lf,%lf,%lf,%lf", &parsed[0], &parsed[1],
                      &parsed[2], &parsed[3]) != 4) {
        return false;
      }
      if (parsed[0] != p.overlap_magnitude || parsed[1] != p.offdiag_magnitude ||
          parsed[2] != p.purity || parsed[3] != p.log_overlap) {
        return false;
      }
    }
    return true;
  });

  out << (h.all_ok() ? "selftest passed\n" : "selftest FAILED\n");
  return h.all_ok();
}

}  // namespace decolab
