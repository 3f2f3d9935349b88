#include "bimetro/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bimetro/errors.hpp"

namespace bimetro {

double max_qfi(const NumberBudget& budget, const EpsPair& eps) {
  const double diff = std::abs(eps.plus - eps.minus);
  const double sum = std::abs(eps.plus + eps.minus);
  const double n = budget.n_mean;
  const double second = n * n + budget.var;
  // Expanded square keeps the pure-difference and pure-sum cases exact; only
  // the cross term carries a square root.
  return diff * diff * second + sum * sum * budget.var +
         2.0 * diff * sum * std::sqrt(second * budget.var);
}

double cramer_rao(double fisher, std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (fisher < 0.0) throw std::invalid_argument("fisher information must be nonnegative");
  if (fisher == 0.0) {
    throw Error(ErrorCode::zero_information,
                "no phase information; resolution is unbounded");
  }
  return 1.0 / std::sqrt(double(trials) * fisher);
}

DomainCorners domain_corners(const NumberBudget& budget) {
  const SigmaPair sg = sigma(budget);
  const double n2 = budget.n_mean * budget.n_mean;
  DomainCorners c;
  c.c_plus = {n2 * sg.sigma_plus / 4.0, n2 * sg.sigma_minus / 4.0, -n2 / 4.0};
  c.c_minus = {n2 * sg.sigma_minus / 4.0, n2 * sg.sigma_plus / 4.0, -n2 / 4.0};
  return c;
}

namespace {
double arc_half_width(const NumberBudget& budget) {
  const SigmaPair sg = sigma(budget);
  return budget.n_mean * budget.n_mean * (sg.sigma_plus - sg.sigma_minus) / 8.0;
}

void require_on_arc(const NumberBudget& budget, double xi) {
  const double half = arc_half_width(budget);
  if (std::abs(xi) > half * (1.0 + 1e-12) + 1e-12) {
    std::ostringstream os;
    os << "xi = " << xi << " outside the feasible arc |xi| <= " << half;
    throw Error(ErrorCode::out_of_arc, os.str());
  }
}
}  // namespace

double h2_on_parabola(const NumberBudget& budget, const EpsPair& eps, double xi) {
  if (budget.var <= 0.0) {
    throw std::invalid_argument("parabolic branch requires positive number variance");
  }
  require_on_arc(budget, xi);
  const double diff = eps.plus - eps.minus;
  const double sum = eps.plus + eps.minus;
  return diff * diff * xi * xi / budget.var +
         (eps.plus * eps.plus - eps.minus * eps.minus) * xi +
         0.25 * sum * sum * budget.var;
}

double h2_on_line(const NumberBudget& budget, const EpsPair& eps, double xi) {
  require_on_arc(budget, xi);
  const double diff = eps.plus - eps.minus;
  const double n2 = budget.n_mean * budget.n_mean;
  return (eps.plus * eps.plus - eps.minus * eps.minus) * xi +
         0.25 * diff * diff * n2 +
         0.5 * (eps.plus * eps.plus + eps.minus * eps.minus) * budget.var;
}

ArcMaximum h2_arc_maximum(const NumberBudget& budget, const EpsPair& eps) {
  ArcMaximum out;
  out.value = 0.25 * max_qfi(budget, eps);
  const double scale =
      std::max(1.0, eps.plus * eps.plus + eps.minus * eps.minus);
  out.degenerate = std::abs(eps.plus * eps.plus - eps.minus * eps.minus) <=
                       1e-14 * scale &&
                   eps.plus != eps.minus;
  return out;
}

SpecialCaseQfi special_case_qfi(SpecialCase which, const NumberBudget& budget) {
  EpsPair eps;
  switch (which) {
    case SpecialCase::antisymmetric: eps = {1.0, -1.0}; break;
    case SpecialCase::symmetric: eps = {1.0, 1.0}; break;
    case SpecialCase::unbalanced: eps = {1.0, 0.0}; break;
  }
  const double f = max_qfi(budget, eps);
  SpecialCaseQfi out;
  out.qfi = f;
  out.delta_phi_min = [f](std::int64_t trials) { return cramer_rao(f, trials); };
  return out;
}

GaussianGap gaussian_gap(const EpsPair& eps, double n_mean) {
  if (!(n_mean > 0.0)) throw std::invalid_argument("mean number must be positive");
  const NumberBudget matched(n_mean, 2.0 * n_mean * (n_mean + 1.0));
  GaussianGap gap;
  gap.f_tilde = max_qfi(matched, eps);
  gap.f_gauss = 8.0 * eps.plus * eps.plus * n_mean * (n_mean + 1.0);
  gap.relative_gap =
      gap.f_tilde > 0.0 ? (gap.f_tilde - gap.f_gauss) / gap.f_tilde : 0.0;
  const double diff = std::abs(eps.plus - eps.minus);
  const double sum = std::abs(eps.plus + eps.minus);
  const double denom = std::sqrt(3.0) * diff + std::sqrt(2.0) * sum;
  gap.asymptotic_gap =
      denom > 0.0
          ? diff * (diff + 2.0 * (std::sqrt(6.0) - 2.0) * sum) / (denom * denom)
          : 0.0;
  return gap;
}

}  // namespace bimetro
