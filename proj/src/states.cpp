#include "bimetro/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bimetro/errors.hpp"

namespace bimetro {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

double log_poisson_pmf(int k, double lambda, std::vector<double>& lf) {
  return k * std::log(lambda) - lambda - lf[static_cast<std::size_t>(k)];
}

std::vector<double> log_factorials(int n) {
  std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) lf[k] = lf[k - 1] + std::log(double(k));
  return lf;
}
}  // namespace

NumberBudget::NumberBudget(double n_mean_, double var_)
    : n_mean(n_mean_), var(var_) {
  if (!(n_mean > 0.0)) {
    throw std::invalid_argument("mean particle number must be positive");
  }
  if (!(var >= 0.0)) {
    throw std::invalid_argument("number variance must be nonnegative");
  }
}

SigmaPair sigma(const NumberBudget& budget) {
  const double s = 1.0 + 2.0 * budget.var / (budget.n_mean * budget.n_mean);
  const double root = std::sqrt(s * s - 1.0);
  return {s + root, s - root};
}

TwoModeFockState noon(int n, double phase) {
  if (n < 1) throw std::invalid_argument("occupation must be at least 1");
  AmplitudeMap amps;
  const double w = 1.0 / std::sqrt(2.0);
  amps[{n, 0}] = w;
  amps[{0, n}] = w * std::exp(kI * phase);
  return TwoModeFockState(std::move(amps), n);
}

QuasiNoonState quasi_noon(const NumberBudget& budget, double phase,
                          OccupationRounding rounding) {
  const SigmaPair sg = sigma(budget);
  const double occ_plus = budget.n_mean * (1.0 + sg.sigma_plus) / 2.0;
  const double occ_minus = budget.n_mean * (1.0 + sg.sigma_minus) / 2.0;
  const long rp = std::llround(occ_plus);
  const long rm = std::llround(occ_minus);
  if (rounding == OccupationRounding::strict) {
    const double miss =
        std::max(std::abs(occ_plus - double(rp)), std::abs(occ_minus - double(rm)));
    if (miss > 1e-9) {
      std::ostringstream os;
      os << "branch occupations (" << occ_plus << ", " << occ_minus
         << ") are not integers; adjust the budget or request rounding";
      throw Error(ErrorCode::non_integer_occupation, os.str());
    }
  }
  // Branch weights of the family member actually built: with occupations
  // (M+, M-) the ratio sigma_plus equals M+/M-, so the weights reduce to the
  // opposite occupation over the total.  This keeps the rounded state inside
  // the exactly-saturating family (its realized budget is saturated too) and
  // makes the strict-mode weights exact rationals.
  const double occ_sum = double(rp + rm);
  const double w_plus = occ_sum > 0.0 ? double(rm) / occ_sum : 0.5;
  const double w_minus = occ_sum > 0.0 ? double(rp) / occ_sum : 0.5;
  AmplitudeMap amps;
  amps[{static_cast<int>(rp), 0}] += std::sqrt(w_plus);
  amps[{0, static_cast<int>(rm)}] += std::sqrt(w_minus) * std::exp(kI * phase);
  const int cutoff = static_cast<int>(std::max(rp, rm));
  TwoModeFockState state(std::move(amps), cutoff);
  const NumberMoments mom = number_moments(state);
  QuasiNoonState out{std::move(state),
                     NumberBudget(mom.mean_total, std::max(mom.var_total, 0.0)),
                     static_cast<int>(rp), static_cast<int>(rm)};
  return out;
}

PoissonWeights poisson_mu(const NumberBudget& budget) {
  const double n = budget.n_mean;
  const double v = budget.var;
  if (v < n - 1e-12) {
    std::ostringstream os;
    os << "variance " << v << " below the Poissonian floor " << n;
    throw Error(ErrorCode::variance_too_small, os.str());
  }
  const double excess = std::max(0.0, v - n);
  const double root = std::sqrt(excess / (n * n + excess));
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

TwoModeFockState poissonian_cat(const NumberBudget& budget,
                                const CatPhases& phases, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
  const PoissonWeights mu = poisson_mu(budget);
  const double lambda_plus = budget.n_mean / (2.0 * mu.mu_plus);
  const double lambda_minus = budget.n_mean / (2.0 * mu.mu_minus);
  auto lf = log_factorials(cutoff);

  AmplitudeMap amps;
  const double p0 = std::exp(log_poisson_pmf(0, lambda_plus, lf));
  const double q0 = std::exp(log_poisson_pmf(0, lambda_minus, lf));
  // The two branches' vacuum components merge into one real amplitude.
  amps[{0, 0}] = std::sqrt(mu.mu_plus * p0 + mu.mu_minus * q0);
  for (int m = 1; m <= cutoff; ++m) {
    const double pm = std::exp(log_poisson_pmf(m, lambda_plus, lf));
    amps[{m, 0}] = std::sqrt(mu.mu_plus * pm) *
                   std::exp(kI * (m * phases.dphi + phases.phi0));
  }
  for (int n = 1; n <= cutoff; ++n) {
    const double qn = std::exp(log_poisson_pmf(n, lambda_minus, lf));
    amps[{0, n}] = std::sqrt(mu.mu_minus * qn) *
                   std::exp(kI * (n * phases.dphi_tilde + phases.phi0_tilde));
  }
  TwoModeFockState state = TwoModeFockState::from_unit_series(std::move(amps), cutoff);
  require_truncation_loss_at_most(state, 1e-8);
  return state;
}

TwoModeFockState squeezed_vacuum_fock(double r, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  AmplitudeMap amps;
  if (r == 0.0) {
    amps[{0, 0}] = 1.0;
    return TwoModeFockState(std::move(amps), cutoff);
  }
  const double t = std::abs(std::tanh(r));
  const double sign = (r > 0.0) ? -1.0 : 1.0;  // (-tanh r)^k alternation
  const double log_cosh = std::log(std::cosh(r));
  auto lf = log_factorials(cutoff);
  double branch_sign = 1.0;
  for (int k = 0; 2 * k <= cutoff; ++k) {
    // |c_{2k}| = tanh^k r * sqrt((2k)!) / (2^k k!) / sqrt(cosh r)
    const double log_mag = k * std::log(t) + 0.5 * lf[2 * k] -
                           k * std::log(2.0) - lf[k] - 0.5 * log_cosh;
    amps[{2 * k, 0}] = branch_sign * std::exp(log_mag);
    branch_sign *= sign;
  }
  TwoModeFockState state = TwoModeFockState::from_unit_series(std::move(amps), cutoff);
  require_truncation_loss_at_most(state, 1e-8);
  return state;
}

int squeezed_vacuum_cutoff_for_loss(double r, double max_loss, int cap) {
  if (!(max_loss > 0.0)) throw std::invalid_argument("loss target must be positive");
  if (r == 0.0) return 0;
  const double t = std::tanh(r) * std::tanh(r);
  const double log_cosh = std::log(std::cosh(r));
  double lf2k = 0.0, lfk = 0.0;  // log (2k)!, log k!
  for (int k = 0; 2 * k <= cap; ++k) {
    if (k > 0) {
      lf2k += std::log(double(2 * k - 1)) + std::log(double(2 * k));
      lfk += std::log(double(k));
    }
    // |c_{2k}|^2 = t^k (2k)! / (4^k (k!)^2 cosh r), with t = tanh^2 r
    const double log_prob =
        k * std::log(t) + lf2k - 2.0 * k * std::log(2.0) - 2.0 * lfk - log_cosh;
    const double prob = std::exp(log_prob);
    // Successive probability ratio is t (2k+1)/(2k+2) < t, giving a
    // geometric bound on everything past this term.
    const double tail = prob * t * (2.0 * k + 1.0) / (2.0 * k + 2.0) / (1.0 - t);
    if (tail <= max_loss) return 2 * k;
  }
  throw Error(ErrorCode::truncation_exceeded,
              "no cutoff within the cap reaches the requested loss");
}

TwoModeFockState coherent_fock(std::complex<double> alpha_plus,
                               std::complex<double> alpha_minus, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  const double total = std::norm(alpha_plus) + std::norm(alpha_minus);
  auto lf = log_factorials(cutoff);
  AmplitudeMap amps;
  for (int m = 0; m <= cutoff; ++m) {
    for (int n = 0; m + n <= cutoff; ++n) {
      // alpha+^m alpha-^n / sqrt(m! n!) * exp(-|alpha|^2/2)
      std::complex<double> a = std::exp(-0.5 * total - 0.5 * (lf[m] + lf[n]));
      a *= std::pow(alpha_plus, m) * std::pow(alpha_minus, n);
      if (std::norm(a) > 0.0) amps[{m, n}] = a;
    }
  }
  TwoModeFockState state = TwoModeFockState::from_unit_series(std::move(amps), cutoff);
  require_truncation_loss_at_most(state, 1e-8);
  return state;
}

}  // namespace bimetro
