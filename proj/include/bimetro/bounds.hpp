#pragma once

#include <cstdint>
#include <functional>

#include "bimetro/circuit.hpp"
#include "bimetro/states.hpp"

namespace bimetro {

// Generator eigenvalue pair feeding the bound formulas.
struct EpsPair {
  double plus = 0.0;
  double minus = 0.0;
};

inline EpsPair eps_pair(const GeneratorSpectrum& gen) {
  return {gen.eps_plus, gen.eps_minus};
}

// Largest QFI attainable with mean number n and number variance var:
// (|eps+ - eps-| sqrt(n^2 + var) + |eps+ + eps-| sqrt(var))^2.
double max_qfi(const NumberBudget& budget, const EpsPair& eps);

// Smallest resolvable phase after `trials` independent repetitions,
// 1/sqrt(trials * fisher).  Throws ZERO_INFORMATION when fisher == 0.
double cramer_rao(double fisher, std::int64_t trials);

// Point in the (Var m, Var n, Cov mn) resource space.
struct VariancePoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Extremal variance splittings compatible with the budget; both corners carry
// the saturating covariance z = -n^2/4.
struct DomainCorners {
  VariancePoint c_plus, c_minus;
};

DomainCorners domain_corners(const NumberBudget& budget);

// Objective along the curved (parabolic-arc) part of the feasible boundary,
// parameterized by xi = (x - y)/2.  Throws OUT_OF_ARC beyond the corners.
double h2_on_parabola(const NumberBudget& budget, const EpsPair& eps, double xi);

// Objective along the straight segment joining the corners.
double h2_on_line(const NumberBudget& budget, const EpsPair& eps, double xi);

struct ArcMaximum {
  double value = 0.0;
  // Both corners tie (eps+ = -eps-): the maximizer is not unique, the value is.
  bool degenerate = false;
};

ArcMaximum h2_arc_maximum(const NumberBudget& budget, const EpsPair& eps);

enum class SpecialCase { antisymmetric, symmetric, unbalanced };

struct SpecialCaseQfi {
  double qfi = 0.0;
  // Phase resolution as a function of the repetition count.
  std::function<double(std::int64_t)> delta_phi_min;
};

// Closed forms for the three canonical eigenvalue pairs (1,-1), (1,1), (1,0).
SpecialCaseQfi special_case_qfi(SpecialCase which, const NumberBudget& budget);

// Comparison of the best Gaussian probe against the unconstrained optimum at
// matched resources (var = 2 n (n+1), the optimal Gaussian's own variance).
struct GaussianGap {
  double f_tilde = 0.0;     // number-constrained optimum at matched variance
  double f_gauss = 0.0;     // best pure Gaussian probe
  double relative_gap = 0.0;
  double asymptotic_gap = 0.0;  // n -> infinity limit of the relative gap
};

GaussianGap gaussian_gap(const EpsPair& eps, double n_mean);

}  // namespace bimetro
