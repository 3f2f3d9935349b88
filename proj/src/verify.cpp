#include "bimetro/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bimetro/bounds.hpp"
#include "bimetro/circuit.hpp"
#include "bimetro/errors.hpp"
#include "bimetro/fock.hpp"
#include "bimetro/gaussian.hpp"
#include "bimetro/oracle.hpp"
#include "bimetro/parallel.hpp"
#include "bimetro/random.hpp"
#include "bimetro/states.hpp"

namespace bimetro {

int VerificationReport::failed_count() const {
  int n = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++n;
  }
  return n;
}

namespace {

CircuitSpec random_spec(Rng& rng) {
  std::uniform_real_distribution<double> offset(-std::numbers::pi,
                                                std::numbers::pi);
  std::uniform_real_distribution<double> slope(-2.0, 2.0);
  CircuitSpec spec;
  spec.beta = {offset(rng), slope(rng)};
  spec.chi = {offset(rng), slope(rng)};
  spec.tau = {offset(rng), slope(rng)};
  spec.rho = {offset(rng), slope(rng)};
  return spec;
}

GaussianPureState random_gaussian(Rng& rng) {
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  double ra = 1.2 * r01(rng), rb = 1.2 * r01(rng);
  if (ra < rb) std::swap(ra, rb);
  UAngles u{2.0 * angle(rng), angle(rng), angle(rng), angle(rng)};
  Eigen::Vector2cd alpha(std::complex<double>(2.0 * r01(rng) - 1.0,
                                              2.0 * r01(rng) - 1.0),
                         std::complex<double>(2.0 * r01(rng) - 1.0,
                                              2.0 * r01(rng) - 1.0));
  return GaussianPureState(ra, rb, u, alpha);
}

EpsPair random_eps(Rng& rng) {
  std::uniform_real_distribution<double> e(-1.5, 1.5);
  double a = e(rng), b = e(rng);
  if (std::abs(a) < std::abs(b)) std::swap(a, b);
  return {a, b};
}

CheckResult check_transfer_unitarity(std::uint64_t seed) {
  CheckResult res{"transfer-unitarity", false, 0.0, 1e-12, 1000, ""};
  Rng rng(mix_seed(seed, 1));
  std::uniform_real_distribution<double> phi(-3.0, 3.0);
  for (int i = 0; i < res.samples; ++i) {
    const CircuitSpec spec = random_spec(rng);
    const double defect = transfer_matrix(spec, phi(rng)).unitarity_defect();
    res.max_error = std::max(res.max_error, defect);
  }
  res.passed = res.max_error <= res.tolerance;
  return res;
}

CheckResult check_fd_generator(std::uint64_t seed) {
  CheckResult res{"generator-fd-consistency", false, 0.0, 1e-6, 100, ""};
  Rng rng(mix_seed(seed, 2));
  std::uniform_real_distribution<double> phi(-3.0, 3.0);
  for (int i = 0; i < res.samples; ++i) {
    const CircuitSpec spec = random_spec(rng);
    const double p = phi(rng);
    const GeneratorSpectrum exact = generator(spec, p);
    const GeneratorSpectrum fd = fd_generator(spec, p, 1e-5);
    const double entry_err =
        (exact.single_particle() - fd.single_particle()).cwiseAbs().maxCoeff();
    const double eps_err = std::max(std::abs(exact.eps_plus - fd.eps_plus),
                                    std::abs(exact.eps_minus - fd.eps_minus));
    res.max_error = std::max({res.max_error, entry_err, eps_err});
  }
  res.passed = res.max_error <= res.tolerance;
  return res;
}

CheckResult check_bound_sampling(std::uint64_t seed, int samples) {
  CheckResult res{"bound-sampling", false, 0.0, 1e-6, samples, ""};
  const NumberBudget budgets[] = {{4.0, 2.0}, {6.0, 9.0}, {5.0, 0.0}};
  const EpsPair pairs[] = {{1.0, -1.0}, {1.0, 1.0}, {1.0, 0.0}, {0.7, -0.3}};
  const int grid_max = 30;
  std::vector<double> worst(static_cast<std::size_t>(samples), 0.0);
  parallel_index_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const NumberBudget& budget = budgets[i % std::size(budgets)];
    const ConstrainedDistribution dist = sample_constrained_distribution(
        budget, grid_max, mix_seed(seed, 1000 + i));
    double w = 0.0;
    for (const EpsPair& eps : pairs) {
      const double bound = max_qfi(budget, eps);
      const double achieved = distribution_qfi(dist.probs, eps);
      w = std::max(w, (achieved - bound) / std::max(1.0, bound));
    }
    worst[i] = w;
  });
  for (double w : worst) res.max_error = std::max(res.max_error, w);
  res.note = "largest relative bound excess";
  res.passed = res.max_error <= res.tolerance;
  return res;
}

CheckResult check_bound_achievability(std::uint64_t seed, FaultInjection fault) {
  CheckResult res{"bound-achievability", false, 0.0, 0.01, 40, ""};
  const NumberBudget budgets[] = {{4.0, 2.0}, {3.2, 5.76}};
  const EpsPair pairs[] = {{1.0, -1.0}, {1.0, 0.0}};
  SamplerOptions options;
  options.bias_toward_optimum = true;
  double worst_shortfall = 0.0;
  for (const NumberBudget& budget : budgets) {
    for (const EpsPair& eps : pairs) {
      const double bound = max_qfi(budget, eps);
      double best = 0.0;
      for (int i = 0; i < res.samples / 4; ++i) {
        const ConstrainedDistribution dist = sample_constrained_distribution(
            budget, 30, mix_seed(seed, 2000 + i), options);
        EpsPair scored = eps;
        if (fault == FaultInjection::eps_sign_flip) scored.minus = -scored.minus;
        best = std::max(best, distribution_qfi(dist.probs, scored));
      }
      worst_shortfall = std::max(worst_shortfall, 1.0 - best / bound);
    }
  }
  res.max_error = worst_shortfall;
  res.note = "largest relative shortfall from the bound";
  res.passed = res.max_error <= res.tolerance;
  return res;
}

CheckResult check_gaussian_two_path(std::uint64_t seed) {
  CheckResult res{"gaussian-two-path", false, 0.0, 1e-8, 1000, ""};
  Rng rng(mix_seed(seed, 3));
  for (int i = 0; i < res.samples; ++i) {
    const GaussianPureState state = random_gaussian(rng);
    const EpsPair eps = random_eps(rng);
    const GaussianQfiPaths paths = gaussian_qfi_paths(state, eps);
    const double scale = std::max({1.0, std::abs(paths.closed_form),
                                   std::abs(paths.covariance_form)});
    res.max_error = std::max(
        res.max_error,
        std::abs(paths.closed_form - paths.covariance_form) / scale);
  }
  res.passed = res.max_error <= res.tolerance;
  return res;
}

CheckResult check_fock_gaussian(std::uint64_t seed) {
  CheckResult res{"fock-gaussian-consistency", false, 0.0, 1e-4, 0, ""};
  (void)seed;
  const double rs[] = {0.2, 0.5, 1.0, 1.5};
  const EpsPair pairs[] = {{1.0, -1.0}, {1.0, 1.0}, {0.8, -0.2}};
  for (double r : rs) {
    const int cutoff = squeezed_vacuum_cutoff_for_loss(r, 1e-12);
    const TwoModeFockState fock = squeezed_vacuum_fock(r, cutoff);
    require_truncation_loss_at_most(fock, 1e-10);
    const GaussianPureState gauss(r, 0.0, UAngles{}, Eigen::Vector2cd::Zero());
    for (const EpsPair& eps : pairs) {
      const double via_gauss = gaussian_qfi(gauss, eps);
      GeneratorSpectrum gen = make_spectrum(eps.plus, eps.minus, 0.0);
      const double via_fock = 4.0 * variance_by_operator(fock, gen);
      const double err =
          std::abs(via_gauss - via_fock) / std::max(1.0, std::abs(via_gauss));
      res.max_error = std::max(res.max_error, err);
      ++res.samples;
    }
  }
  res.passed = res.max_error <= res.tolerance;
  return res;
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& options) {
  VerificationReport report;
  report.seed = options.seed;
  report.checks.push_back(check_transfer_unitarity(options.seed));
  report.checks.push_back(check_fd_generator(options.seed));
  report.checks.push_back(check_bound_sampling(options.seed, options.samples));
  report.checks.push_back(check_bound_achievability(options.seed, options.fault));
  report.checks.push_back(check_gaussian_two_path(options.seed));
  report.checks.push_back(check_fock_gaussian(options.seed));
  return report;
}

}  // namespace bimetro
