#include "bimetro/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bimetro/errors.hpp"

namespace bimetro {

namespace {

void validate_entries(const AmplitudeMap& amps) {
  if (amps.empty()) {
    throw std::invalid_argument("state requires at least one amplitude");
  }
  for (const auto& [idx, amp] : amps) {
    if (idx.first < 0 || idx.second < 0) {
      throw std::invalid_argument("negative occupation number");
    }
    (void)amp;
  }
}

}  // namespace

TwoModeFockState::TwoModeFockState(AmplitudeMap amplitudes, int cutoff) {
  validate_entries(amplitudes);
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  double kept = 0.0, dropped = 0.0;
  AmplitudeMap keep;
  for (const auto& [idx, amp] : amplitudes) {
    const double w = std::norm(amp);
    if (w == 0.0) continue;
    if (idx.first + idx.second > cutoff) {
      dropped += w;
    } else {
      kept += w;
      keep.emplace(idx, amp);
    }
  }
  if (kept <= 0.0) {
    throw std::invalid_argument("no probability mass inside the cutoff");
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& [idx, amp] : keep) amp *= scale;
  amps_ = std::move(keep);
  cutoff_ = cutoff;
  truncation_loss_ = dropped / (kept + dropped);
}

TwoModeFockState TwoModeFockState::from_unit_series(AmplitudeMap amplitudes,
                                                    int cutoff) {
  double inside = 0.0;
  for (const auto& [idx, amp] : amplitudes) {
    if (idx.first + idx.second <= cutoff) inside += std::norm(amp);
  }
  TwoModeFockState state(std::move(amplitudes), cutoff);
  // The caller guarantees the untruncated series has unit norm, so whatever
  // mass is missing inside the cutoff was truncated away even though no entry
  // was dropped here.
  state.truncation_loss_ = std::max(0.0, 1.0 - inside);
  return state;
}

std::complex<double> TwoModeFockState::amplitude(int m, int n) const {
  const auto it = amps_.find({m, n});
  return it == amps_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

TwoModeFockState fock_basis_state(int m, int n) {
  AmplitudeMap amps;
  amps[{m, n}] = 1.0;
  return TwoModeFockState(std::move(amps), m + n);
}

ProbabilityMap probabilities(const TwoModeFockState& state) {
  ProbabilityMap p;
  for (const auto& [idx, amp] : state.amplitudes()) p[idx] = std::norm(amp);
  return p;
}

NumberMoments number_moments(const ProbabilityMap& probs) {
  double em = 0, en = 0, emm = 0, enn = 0, emn = 0, et = 0, ett = 0;
  for (const auto& [idx, w] : probs) {
    const double m = idx.first, n = idx.second, t = m + n;
    em += w * m;
    en += w * n;
    emm += w * m * m;
    enn += w * n * n;
    emn += w * m * n;
    et += w * t;
    ett += w * t * t;
  }
  NumberMoments mom;
  mom.mean_m = em;
  mom.mean_n = en;
  mom.var_m = emm - em * em;
  mom.var_n = enn - en * en;
  mom.cov_mn = emn - em * en;
  mom.mean_total = et;
  mom.var_total = ett - et * et;
  return mom;
}

NumberMoments number_moments(const TwoModeFockState& state) {
  return number_moments(probabilities(state));
}

double qfi_pure(const TwoModeFockState& state, const GeneratorSpectrum& gen) {
  const NumberMoments mom = number_moments(state);
  return 4.0 * (gen.eps_plus * gen.eps_plus * mom.var_m +
                gen.eps_minus * gen.eps_minus * mom.var_n +
                2.0 * gen.eps_plus * gen.eps_minus * mom.cov_mn);
}

TwoModeFockState mode_rotate(const TwoModeFockState& state,
                             const Eigen::Matrix2cd& u) {
  const double defect =
      (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    std::ostringstream os;
    os << "mode matrix deviates from unitarity by " << defect;
    throw Error(ErrorCode::non_unitary, os.str());
  }

  // log-factorial table up to the largest occupied sector
  int max_total = 0;
  for (const auto& [idx, amp] : state.amplitudes()) {
    (void)amp;
    max_total = std::max(max_total, idx.first + idx.second);
  }
  std::vector<double> lf(static_cast<std::size_t>(max_total) + 1, 0.0);
  for (int k = 1; k <= max_total; ++k) lf[k] = lf[k - 1] + std::log(double(k));

  // (a+^dag)^m (a-^dag)^n |0> transforms via the binomial expansion of the
  // rotated creation operators; each input cell scatters over its whole
  // particle-number sector, so totals (and hence the cutoff) are preserved.
  const std::complex<double> upp = u(0, 0), ump = u(1, 0), upm = u(0, 1),
                             umm = u(1, 1);
  AmplitudeMap out;
  for (const auto& [idx, amp] : state.amplitudes()) {
    const int m = idx.first, n = idx.second;
    std::complex<double> pow_upp = 1.0;
    for (int k = 0; k <= m; ++k) {
      std::complex<double> pow_upm = 1.0;
      for (int l = 0; l <= n; ++l) {
        const int p = k + l;
        const int q = m + n - p;
        const double logc = 0.5 * (lf[p] + lf[q] + lf[m] + lf[n]) -
                            (lf[k] + lf[m - k] + lf[l] + lf[n - l]);
        std::complex<double> term = amp * std::exp(logc) * pow_upp * pow_upm;
        for (int j = 0; j < m - k; ++j) term *= ump;
        for (int j = 0; j < n - l; ++j) term *= umm;
        out[{p, q}] += term;
        pow_upm *= upm;
      }
      pow_upp *= upp;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (std::norm(it->second) == 0.0) ? out.erase(it) : std::next(it);
  }
  // Scale by the surviving mass so the input's truncation loss carries over
  // (the rotation itself is lossless).
  const double carry = std::sqrt(1.0 - state.truncation_loss());
  for (auto& [idx, amp] : out) amp *= carry;
  return TwoModeFockState::from_unit_series(std::move(out), state.cutoff());
}

void require_truncation_loss_at_most(const TwoModeFockState& state,
                                     double tol) {
  if (state.truncation_loss() > tol) {
    std::ostringstream os;
    os << "truncation loss " << state.truncation_loss() << " exceeds " << tol;
    throw Error(ErrorCode::truncation_exceeded, os.str());
  }
}

}  // namespace bimetro
