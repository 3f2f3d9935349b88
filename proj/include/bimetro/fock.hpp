#pragma once

#include <complex>
#include <map>
#include <utility>

#include <Eigen/Dense>

#include "bimetro/circuit.hpp"

namespace bimetro {

using FockIndex = std::pair<int, int>;  // occupations (m, n) of the two modes
using AmplitudeMap = std::map<FockIndex, std::complex<double>>;
using ProbabilityMap = std::map<FockIndex, double>;

struct NumberMoments {
  double mean_m = 0.0, mean_n = 0.0;
  double var_m = 0.0, var_n = 0.0, cov_mn = 0.0;
  double mean_total = 0.0, var_total = 0.0;
};

// Sparse two-mode Fock expansion, normalized on construction.  Amplitudes on
// sectors with m + n > cutoff are dropped and the discarded probability mass
// is recorded (never silently): truncation_loss() reports it relative to the
// total mass supplied.
class TwoModeFockState {
 public:
  TwoModeFockState(AmplitudeMap amplitudes, int cutoff);

  // For analytically normalized series built up to the cutoff: the loss is
  // the unit-norm deficit of the supplied coefficients.
  static TwoModeFockState from_unit_series(AmplitudeMap amplitudes, int cutoff);

  const AmplitudeMap& amplitudes() const { return amps_; }
  int cutoff() const { return cutoff_; }
  double truncation_loss() const { return truncation_loss_; }
  std::complex<double> amplitude(int m, int n) const;

 private:
  TwoModeFockState() = default;
  AmplitudeMap amps_;
  int cutoff_ = 0;
  double truncation_loss_ = 0.0;
};

TwoModeFockState fock_basis_state(int m, int n);

ProbabilityMap probabilities(const TwoModeFockState& state);
NumberMoments number_moments(const TwoModeFockState& state);
NumberMoments number_moments(const ProbabilityMap& probs);

// QFI of a pure state under a number-diagonal generator, expressed in the
// generator's normal-mode basis: 4 (eps+^2 Var m + eps-^2 Var n
// + 2 eps+ eps- Cov mn).  Amplitude phases are irrelevant by construction.
double qfi_pure(const TwoModeFockState& state, const GeneratorSpectrum& gen);

// Applies a 2x2 mode unitary to the state, sector by sector (total particle
// number is conserved, so the cutoff is unchanged).  Throws NON_UNITARY if
// the matrix fails unitarity at 1e-12.
TwoModeFockState mode_rotate(const TwoModeFockState& state,
                             const Eigen::Matrix2cd& unitary);

// Verification-path guard: rejects states whose truncation loss exceeds tol.
void require_truncation_loss_at_most(const TwoModeFockState& state, double tol);

}  // namespace bimetro
