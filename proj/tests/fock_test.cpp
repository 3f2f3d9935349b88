#include "bimetro/fock.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "bimetro/errors.hpp"
#include "bimetro/random.hpp"
#include "bimetro/states.hpp"
#include "testutil.hpp"

using namespace bimetro;

namespace {
const std::complex<double> kI{0.0, 1.0};
}

TEST_CASE("construction normalizes and tracks truncation") {
  AmplitudeMap amps;
  amps[{1, 0}] = std::complex<double>(0.0, 3.0);
  const TwoModeFockState one(std::move(amps), 4);
  CHECK_NEAR(testutil::cnorm(one.amplitude(1, 0)), 1.0, 1e-15);
  CHECK(one.truncation_loss() == 0.0);

  AmplitudeMap split;
  split[{0, 0}] = 1.0;
  split[{5, 0}] = 1.0;
  const TwoModeFockState cut(std::move(split), 3);
  CHECK_NEAR(cut.truncation_loss(), 0.5, 1e-15);
  CHECK_NEAR(testutil::cnorm(cut.amplitude(0, 0)), 1.0, 1e-15);

  AmplitudeMap empty;
  CHECK_THROWS_AS(TwoModeFockState(std::move(empty), 3), std::invalid_argument);
  AmplitudeMap neg;
  neg[{-1, 0}] = 1.0;
  CHECK_THROWS_AS(TwoModeFockState(std::move(neg), 3), std::invalid_argument);
  AmplitudeMap outside;
  outside[{4, 4}] = 1.0;
  CHECK_THROWS_AS(TwoModeFockState(std::move(outside), 3),
                  std::invalid_argument);
}

TEST_CASE("unit-series construction measures the norm deficit") {
  AmplitudeMap amps;
  amps[{0, 0}] = std::sqrt(0.9);
  const TwoModeFockState s = TwoModeFockState::from_unit_series(std::move(amps), 6);
  CHECK_NEAR(s.truncation_loss(), 0.1, 1e-12);
  CHECK_NEAR(testutil::cnorm(s.amplitude(0, 0)), 1.0, 1e-15);
  CHECK_THROWS_AS(require_truncation_loss_at_most(s, 1e-3), Error);
  try {
    require_truncation_loss_at_most(s, 1e-3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::truncation_exceeded);
  }
}

TEST_CASE("basis states and moments") {
  const TwoModeFockState s = fock_basis_state(2, 3);
  const NumberMoments mom = number_moments(s);
  CHECK(mom.mean_m == 2.0);
  CHECK(mom.mean_n == 3.0);
  CHECK(mom.var_m == 0.0);
  CHECK(mom.var_n == 0.0);
  CHECK(mom.cov_mn == 0.0);
  CHECK(mom.mean_total == 5.0);
  CHECK(mom.var_total == 0.0);

  // The branch weight |1/sqrt(2)|^2 rounds one ulp above 1/2, so the second
  // moments sit a couple of ulps off their exact values.
  const NumberMoments nm = number_moments(noon(3));
  CHECK_NEAR(nm.mean_m, 1.5, 1e-14);
  CHECK_NEAR(nm.mean_n, 1.5, 1e-14);
  CHECK_NEAR(nm.var_m, 2.25, 1e-14);
  CHECK_NEAR(nm.var_n, 2.25, 1e-14);
  CHECK_NEAR(nm.cov_mn, -2.25, 1e-14);
  CHECK_NEAR(nm.mean_total, 3.0, 1e-14);
  CHECK_NEAR(nm.var_total, 0.0, 1e-12);

  double total = 0.0;
  for (const auto& [idx, p] : probabilities(noon(3))) {
    (void)idx;
    total += p;
  }
  CHECK_NEAR(total, 1.0, 1e-15);
}

TEST_CASE("pure-state QFI from the eigenvalue pair") {
  const GeneratorSpectrum anti = make_spectrum(1.0, -1.0, 0.0);
  CHECK_NEAR(qfi_pure(noon(2), anti), 16.0, 1e-12);
  const GeneratorSpectrum soft = make_spectrum(0.7, -0.3, 0.0);
  CHECK_NEAR(qfi_pure(noon(2), soft), 4.0, 1e-12);  // N^2 (e+ - e-)^2
  // Phase of the superposition is irrelevant.
  CHECK_NEAR(qfi_pure(noon(2, 1.234), anti), 16.0, 1e-12);
}

TEST_CASE("mode rotation: balanced splitter amplitudes") {
  Eigen::Matrix2cd u;
  const double w = 1.0 / std::sqrt(2.0);
  u << w, -kI * w, -kI * w, w;

  const TwoModeFockState split = mode_rotate(fock_basis_state(1, 0), u);
  CHECK_NEAR(testutil::cnorm(split.amplitude(1, 0) - w), 0.0, 1e-14);
  CHECK_NEAR(testutil::cnorm(split.amplitude(0, 1) + kI * w), 0.0, 1e-14);

  // Two-photon interference: the coincidence amplitude cancels.
  const TwoModeFockState hom = mode_rotate(fock_basis_state(1, 1), u);
  CHECK(testutil::cnorm(hom.amplitude(1, 1)) <= 1e-14);
  CHECK_NEAR(std::norm(hom.amplitude(2, 0)), 0.5, 1e-14);
  CHECK_NEAR(std::norm(hom.amplitude(0, 2)), 0.5, 1e-14);
}

TEST_CASE("mode rotation conserves totals and inverts cleanly") {
  Rng rng(41);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  AmplitudeMap amps;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; m + n <= 3; ++n) {
      amps[{m, n}] = std::complex<double>(re(rng), re(rng));
    }
  }
  const TwoModeFockState state(std::move(amps), 3);

  // Random unitary from a unit complex 2x2 via QR-free construction.
  const double t = 0.7, a = 0.3, b = -1.1, c = 2.0;
  Eigen::Matrix2cd u;
  u << std::cos(t) * std::exp(kI * a), -std::sin(t) * std::exp(kI * b),
      std::sin(t) * std::exp(-kI * b), std::cos(t) * std::exp(-kI * a);
  u *= std::exp(kI * c);

  const TwoModeFockState rotated = mode_rotate(state, u);
  const NumberMoments before = number_moments(state);
  const NumberMoments after = number_moments(rotated);
  CHECK_NEAR(after.mean_total, before.mean_total, 1e-12);
  CHECK_NEAR(after.var_total, before.var_total, 1e-12);
  CHECK(rotated.truncation_loss() <= 1e-12);

  const TwoModeFockState back = mode_rotate(rotated, u.adjoint());
  for (const auto& [idx, amp] : state.amplitudes()) {
    CHECK_NEAR(testutil::cnorm(back.amplitude(idx.first, idx.second) - amp),
               0.0, 1e-12);
  }

  Eigen::Matrix2cd bad;
  bad << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(mode_rotate(state, bad), Error);
  try {
    mode_rotate(state, bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_unitary);
  }
}

TEST_CASE("mode rotation carries existing truncation loss through") {
  AmplitudeMap amps;
  amps[{0, 0}] = std::sqrt(0.75);
  amps[{2, 0}] = std::sqrt(0.2);
  const TwoModeFockState lossy =
      TwoModeFockState::from_unit_series(std::move(amps), 4);
  CHECK_NEAR(lossy.truncation_loss(), 0.05, 1e-12);
  Eigen::Matrix2cd u;
  const double w = 1.0 / std::sqrt(2.0);
  u << w, w, -w, w;
  const TwoModeFockState rotated = mode_rotate(lossy, u);
  CHECK_NEAR(rotated.truncation_loss(), 0.05, 1e-10);
}
