#pragma once

#include <complex>

#include "bimetro/fock.hpp"

namespace bimetro {

// Particle-number resource budget: mean total number and its variance.
struct NumberBudget {
  double n_mean = 0.0;
  double var = 0.0;

  NumberBudget(double n_mean, double var);
};

// Roots sigma_plus >= 1 >= sigma_minus of the budget's characteristic
// quadratic; their product is exactly 1.
struct SigmaPair {
  double sigma_plus = 1.0;
  double sigma_minus = 1.0;
};

SigmaPair sigma(const NumberBudget& budget);

// (|n,0> + e^{i phase} |0,n>)/sqrt(2) in the normal-mode basis.
TwoModeFockState noon(int n, double phase = 0.0);

enum class OccupationRounding { strict, round };

struct QuasiNoonState {
  TwoModeFockState state;
  NumberBudget realized;  // moments actually achieved (equals the request in
                          // strict mode up to floating point)
  int occupation_plus = 0;
  int occupation_minus = 0;
};

// Two-branch superposition sqrt(1/(1+sigma+))|M+,0> +
// sqrt(1/(1+sigma-)) e^{i phase}|0,M->, with M± = n(1+sigma±)/2.  In strict
// mode the occupations must land on integers to 1e-9
// (NON_INTEGER_OCCUPATION otherwise); in rounding mode they are rounded and
// the realized budget is reported.
QuasiNoonState quasi_noon(const NumberBudget& budget, double phase = 0.0,
                          OccupationRounding rounding = OccupationRounding::strict);

// Branch weights of the Poissonian superposition; requires var >= n_mean
// (VARIANCE_TOO_SMALL otherwise).  The + root is used as the branch weight mu;
// the - root fixes the second Poisson mean.
struct PoissonWeights {
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

PoissonWeights poisson_mu(const NumberBudget& budget);

struct CatPhases {
  double dphi = 0.0, phi0 = 0.0;          // linear phase ramp on the (m,0) branch
  double dphi_tilde = 0.0, phi0_tilde = 0.0;  // and on the (0,n) branch
};

// Axis-supported superposition of two Poissonian envelopes meeting the budget
// in mean and second moment.  Throws TRUNCATION_EXCEEDED if the cutoff leaves
// more than 1e-8 of the mass outside.
TwoModeFockState poissonian_cat(const NumberBudget& budget,
                                const CatPhases& phases, int cutoff);

// Single-mode squeezed vacuum (even occupations of the + mode only).
TwoModeFockState squeezed_vacuum_fock(double r, int cutoff);

// Smallest cutoff whose geometric tail bound keeps the squeezed-vacuum loss
// at or below max_loss.
int squeezed_vacuum_cutoff_for_loss(double r, double max_loss, int cap = 2000);

// Product of coherent states on the two modes, truncated at the cutoff.
TwoModeFockState coherent_fock(std::complex<double> alpha_plus,
                               std::complex<double> alpha_minus, int cutoff);

}  // namespace bimetro
