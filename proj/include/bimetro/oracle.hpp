#pragma once

#include <cstdint>

#include "bimetro/bounds.hpp"
#include "bimetro/circuit.hpp"
#include "bimetro/fock.hpp"
#include "bimetro/states.hpp"

namespace bimetro {

// Generator spectrum recovered from the circuit alone by central finite
// differences of the single-particle transfer matrix (no analytic derivative
// formulas involved).  step must lie in [1e-8, 1e-3].
GeneratorSpectrum fd_generator(const CircuitSpec& spec, double phi, double step);

// Random occupation-number distribution with prescribed total-number mean and
// variance, obtained by alternating projection of a random positive table
// onto the constraint hyperplanes with nonnegativity repair.
struct ConstrainedDistribution {
  ProbabilityMap probs;
  double n_mean = 0.0;
  double var = 0.0;
  double mean_err = 0.0;  // residual |E[m+n] - n_mean|
  double var_err = 0.0;   // residual |Var[m+n] - var|
  int iterations = 0;
};

struct SamplerOptions {
  int max_iterations = 10000;
  double tolerance = 1e-8;
  // Start from the two-branch optimum plus noise instead of a uniform table,
  // producing distributions that nearly saturate the QFI bound.
  bool bias_toward_optimum = false;
};

ConstrainedDistribution sample_constrained_distribution(
    const NumberBudget& budget, int grid_max, std::uint64_t seed,
    const SamplerOptions& options = {});

// 4 Var(eps+ m + eps- n) of a distribution: the QFI any pure state with these
// occupation probabilities attains under the number-diagonal generator.
double distribution_qfi(const ProbabilityMap& probs, const EpsPair& eps);

// Brute-force variance of the generator on a Fock state by applying the
// diagonal operator eps+ m + eps- n amplitude by amplitude.
double variance_by_operator(const TwoModeFockState& state,
                            const GeneratorSpectrum& gen);

}  // namespace bimetro
