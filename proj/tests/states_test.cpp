#include "bimetro/states.hpp"

#include <cmath>

#include <doctest.h>

#include "bimetro/errors.hpp"
#include "testutil.hpp"

using namespace bimetro;

TEST_CASE("budget validation and sigma roots") {
  CHECK_THROWS_AS(NumberBudget(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NumberBudget(-2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NumberBudget(2.0, -0.1), std::invalid_argument);

  const SigmaPair sg = sigma(NumberBudget(4.0, 2.0));
  CHECK_NEAR(sg.sigma_plus, 2.0, 1e-14);
  CHECK_NEAR(sg.sigma_minus, 0.5, 1e-14);
  const SigmaPair unit = sigma(NumberBudget(7.0, 0.0));
  CHECK(unit.sigma_plus == 1.0);
  CHECK(unit.sigma_minus == 1.0);
  const SigmaPair wide = sigma(NumberBudget(3.2, 5.76));
  CHECK_NEAR(wide.sigma_plus * wide.sigma_minus, 1.0, 1e-12);
  CHECK_NEAR(wide.sigma_plus, 4.0, 1e-12);
}

TEST_CASE("two-branch probe hits the requested budget") {
  const QuasiNoonState qn = quasi_noon(NumberBudget(4.0, 2.0));
  CHECK(qn.occupation_plus == 6);
  CHECK(qn.occupation_minus == 3);
  CHECK_NEAR(testutil::cnorm(qn.state.amplitude(6, 0)), std::sqrt(1.0 / 3.0),
             1e-12);
  CHECK_NEAR(testutil::cnorm(qn.state.amplitude(0, 3)), std::sqrt(2.0 / 3.0),
             1e-12);
  CHECK_NEAR(qn.realized.n_mean, 4.0, 1e-12);
  CHECK_NEAR(qn.realized.var, 2.0, 1e-11);

  // Zero variance collapses both branches onto the same occupation.
  const QuasiNoonState even = quasi_noon(NumberBudget(4.0, 0.0));
  CHECK(even.occupation_plus == 4);
  CHECK(even.occupation_minus == 4);
  CHECK_NEAR(testutil::cnorm(even.state.amplitude(4, 0)), std::sqrt(0.5), 1e-12);
  CHECK_NEAR(testutil::cnorm(even.state.amplitude(0, 4)), std::sqrt(0.5), 1e-12);
}

TEST_CASE("non-integer occupations: strict rejects, rounding reports") {
  CHECK_THROWS_AS(quasi_noon(NumberBudget(3.0, 2.0)), Error);
  try {
    quasi_noon(NumberBudget(3.0, 2.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_integer_occupation);
  }

  const QuasiNoonState rounded =
      quasi_noon(NumberBudget(3.0, 2.0), 0.0, OccupationRounding::round);
  CHECK(rounded.occupation_plus == 5);
  CHECK(rounded.occupation_minus == 2);
  CHECK_NEAR(rounded.realized.n_mean, 20.0 / 7.0, 1e-12);
  CHECK_NEAR(rounded.realized.var, 90.0 / 49.0, 1e-11);
}

TEST_CASE("poissonian branch weights") {
  const PoissonWeights mu = poisson_mu(NumberBudget(2.0, 4.0));
  CHECK_NEAR(mu.mu_plus, 0.5 * (1.0 + 1.0 / std::sqrt(3.0)), 1e-14);
  CHECK_NEAR(mu.mu_minus, 0.5 * (1.0 - 1.0 / std::sqrt(3.0)), 1e-14);

  // Poissonian floor: variance may not drop below the mean.
  CHECK_THROWS_AS(poisson_mu(NumberBudget(2.0, 1.9)), Error);
  try {
    poisson_mu(NumberBudget(2.0, 1.9));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::variance_too_small);
  }
  const PoissonWeights edge = poisson_mu(NumberBudget(2.0, 2.0));
  CHECK_NEAR(edge.mu_plus, 0.5, 1e-14);
  CHECK_NEAR(edge.mu_minus, 0.5, 1e-14);
}

TEST_CASE("poissonian cat meets the budget moments") {
  const NumberBudget budget(2.0, 4.0);
  const TwoModeFockState cat = poissonian_cat(budget, CatPhases{}, 64);
  const NumberMoments mom = number_moments(cat);
  CHECK_NEAR(mom.mean_total, 2.0, 1e-9);
  CHECK_NEAR(mom.var_total, 4.0, 1e-8);
  CHECK_NEAR(mom.mean_m, 1.0, 1e-9);
  CHECK_NEAR(mom.mean_n, 1.0, 1e-9);
  CHECK(cat.truncation_loss() <= 1e-10);

  // Support is confined to the two occupation axes.
  for (const auto& [idx, amp] : cat.amplitudes()) {
    (void)amp;
    CHECK((idx.first == 0 || idx.second == 0));
  }

  // Branch phases shift amplitudes, never populations.
  const CatPhases phases{0.7, 0.2, -0.4, 1.1};
  const TwoModeFockState tilted = poissonian_cat(budget, phases, 64);
  const NumberMoments tmom = number_moments(tilted);
  CHECK_NEAR(tmom.mean_total, mom.mean_total, 1e-12);
  CHECK_NEAR(tmom.var_total, mom.var_total, 1e-12);

  CHECK_THROWS_AS(poissonian_cat(budget, CatPhases{}, 8), Error);
}

TEST_CASE("squeezed vacuum in the number basis") {
  const double r = std::log(2.0 + std::sqrt(5.0));  // sinh r = 2 exactly
  const TwoModeFockState sq = squeezed_vacuum_fock(r, 200);
  const NumberMoments mom = number_moments(sq);
  CHECK_NEAR(mom.mean_total, 4.0, 1e-6);
  CHECK_NEAR(mom.var_total, 40.0, 1e-5);
  CHECK(sq.truncation_loss() <= 1e-9);

  // Only even occupations of the first mode appear.
  for (const auto& [idx, amp] : sq.amplitudes()) {
    (void)amp;
    CHECK(idx.second == 0);
    CHECK(idx.first % 2 == 0);
  }
  // Renormalization over the truncated support shifts c0 upward by about
  // loss/2 (~1e-11 at this cutoff), so the tolerance sits above that.
  const double c0 = std::pow(5.0, -0.25);
  CHECK_NEAR(sq.amplitude(0, 0).real(), c0, 1e-10);
  CHECK(sq.amplitude(2, 0).real() < 0.0);  // sign alternation

  // A cutoff this tight leaves ~2e-5 of the mass outside: hard error.
  CHECK_THROWS_AS(squeezed_vacuum_fock(r, 80), Error);

  const TwoModeFockState vac = squeezed_vacuum_fock(0.0, 0);
  CHECK_NEAR(testutil::cnorm(vac.amplitude(0, 0)), 1.0, 1e-15);
}

TEST_CASE("adaptive squeezed-vacuum cutoff meets its loss target") {
  for (double r : {0.4, 1.0, 1.7632}) {
    const int cutoff = squeezed_vacuum_cutoff_for_loss(r, 1e-10);
    CHECK(cutoff % 2 == 0);
    const TwoModeFockState sq = squeezed_vacuum_fock(r, cutoff);
    CHECK(sq.truncation_loss() <= 1e-10);
  }
  CHECK(squeezed_vacuum_cutoff_for_loss(0.0, 1e-10) == 0);
  CHECK_THROWS_AS(squeezed_vacuum_cutoff_for_loss(5.0, 1e-12, 60), Error);
}

TEST_CASE("coherent product state moments") {
  const TwoModeFockState coh =
      coherent_fock(1.2, std::complex<double>(0.0, 0.5), 40);
  const NumberMoments mom = number_moments(coh);
  CHECK_NEAR(mom.mean_m, 1.44, 1e-10);
  CHECK_NEAR(mom.var_m, 1.44, 1e-10);
  CHECK_NEAR(mom.mean_n, 0.25, 1e-10);
  CHECK_NEAR(mom.var_n, 0.25, 1e-10);
  CHECK_NEAR(mom.cov_mn, 0.0, 1e-10);
  CHECK_NEAR(coh.amplitude(0, 0).real(), std::exp(-0.5 * 1.69), 1e-12);
}
