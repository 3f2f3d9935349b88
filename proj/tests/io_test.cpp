#include "bimetro/json_io.hpp"
#include "bimetro/state_lang.hpp"

#include <cmath>
#include <complex>

#include <doctest.h>

#include "bimetro/errors.hpp"
#include "bimetro/states.hpp"
#include "testutil.hpp"

using namespace bimetro;

TEST_CASE("circuit JSON round trips byte-identically") {
  const Json custom = Json::parse(
      R"({"beta":[0.1,0.5],"chi":[0.0,0.25],"rho":[-0.3,0.0],"tau":[0.2,1.0]})");
  const CircuitSpec spec = circuit_from_json(custom);
  CHECK(spec.beta.offset == 0.1);
  CHECK(spec.tau.slope == 1.0);
  CHECK(circuit_to_json(spec).dump() == custom.dump());

  const Json catalog = Json::parse(R"({"catalog":"mach_zehnder"})");
  CHECK(circuit_to_json(circuit_from_json(catalog)).dump() == catalog.dump());
}

TEST_CASE("circuit JSON validation") {
  CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({"catalog":"bogus"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      circuit_from_json(Json::parse(R"({"beta":[0,1],"gamma":[1,2]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(circuit_from_json(Json::parse(R"({"beta":[1]})")),
                  std::invalid_argument);

  const CircuitSpec partial = circuit_from_json(Json::parse(R"({"tau":[0,1]})"));
  CHECK(partial.tau.slope == 1.0);
  CHECK(partial.beta.offset == 0.0);
  CHECK(partial.beta.slope == 0.0);
}

TEST_CASE("fock JSON round trips byte-identically") {
  const Json j = fock_to_json(noon(2));
  const TwoModeFockState back = fock_from_json(j);
  CHECK(fock_to_json(back).dump() == j.dump());
  CHECK_NEAR(testutil::cnorm(back.amplitude(2, 0) - noon(2).amplitude(2, 0)),
             0.0, 1e-15);

  // Duplicate entries accumulate before normalization.
  const Json dup = Json::parse(
      R"({"cutoff":2,"amplitudes":[[0,0,0.6,0.0],[0,0,0.0,0.8]]})");
  const TwoModeFockState merged = fock_from_json(dup);
  CHECK_NEAR(merged.amplitude(0, 0).real(), 0.6, 1e-15);
  CHECK_NEAR(merged.amplitude(0, 0).imag(), 0.8, 1e-15);

  CHECK_THROWS_AS(fock_from_json(Json::parse(R"({"cutoff":2})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      fock_from_json(Json::parse(R"({"cutoff":2,"amplitudes":[[1,2,3]]})")),
      std::invalid_argument);
}

TEST_CASE("gaussian JSON round trips byte-identically") {
  const GaussianPureState state(
      0.8, 0.2, UAngles{0.1, -0.4, 0.9, 1.3},
      Eigen::Vector2cd(std::complex<double>(0.3, 0.1),
                       std::complex<double>(-0.2, 0.0)));
  const Json j = gaussian_to_json(state);
  const GaussianPureState back = gaussian_from_json(j);
  CHECK(gaussian_to_json(back).dump() == j.dump());
  CHECK(back.r_plus == 0.8);
  CHECK(back.u.theta == 1.3);
  CHECK(back.alpha(0) == state.alpha(0));

  const GaussianPureState bare =
      gaussian_from_json(Json::parse(R"({"r":[0.5,0.2]})"));
  CHECK(bare.u.eta == 0.0);
  CHECK(bare.alpha.isZero());

  CHECK_THROWS_AS(gaussian_from_json(Json::parse(R"({"u":[0,0,0,0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(gaussian_from_json(Json::parse(R"({"r":[0.2,0.5]})")),
                  std::invalid_argument);  // ordering enforced by the ctor
}

TEST_CASE("state mini-language builds the catalog states") {
  const TwoModeFockState n3 = parse_state("noon:3");
  CHECK_NEAR(testutil::cnorm(n3.amplitude(3, 0)), std::sqrt(0.5), 1e-14);

  const TwoModeFockState shifted = parse_state("noon:3,phase=0.5");
  CHECK_NEAR(
      testutil::cnorm(shifted.amplitude(0, 3) -
                      std::sqrt(0.5) * std::exp(std::complex<double>(0, 0.5))),
      0.0, 1e-14);

  const TwoModeFockState qn = parse_state("quasi-noon:n=4,var=2");
  CHECK_NEAR(testutil::cnorm(qn.amplitude(6, 0)), std::sqrt(1.0 / 3.0), 1e-12);

  const TwoModeFockState rounded = parse_state("quasi-noon:n=3,var=2,rounded");
  CHECK(testutil::cnorm(rounded.amplitude(5, 0)) > 0.0);

  const TwoModeFockState basis = parse_state("fock:2,3");
  CHECK_NEAR(testutil::cnorm(basis.amplitude(2, 3)), 1.0, 1e-15);

  const TwoModeFockState sq = parse_state("squeezed-vacuum:r=0.5");
  CHECK(sq.truncation_loss() <= 1e-10);

  const TwoModeFockState cat = parse_state("poisson-cat:n=2,var=4");
  const NumberMoments mom = number_moments(cat);
  CHECK_NEAR(mom.mean_total, 2.0, 1e-8);
  CHECK_NEAR(mom.var_total, 4.0, 1e-7);

  const TwoModeFockState coh = parse_state("coherent:re=1.0,im2=0.5,cutoff=30");
  CHECK_NEAR(number_moments(coh).mean_m, 1.0, 1e-9);
  CHECK_NEAR(number_moments(coh).mean_n, 0.25, 1e-9);
}

TEST_CASE("state mini-language rejects malformed requests") {
  CHECK_THROWS_AS(parse_state("bogus:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("noon:3,bogus=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("noon:3,unknownflag"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("noon:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("fock:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("quasi-noon:n=4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("noon:2.5"), std::invalid_argument);

  // Domain violations surface as library errors, not parse errors.
  CHECK_THROWS_AS(parse_state("quasi-noon:n=3,var=2"), Error);
  CHECK_THROWS_AS(parse_state("poisson-cat:n=2,var=1"), Error);
  CHECK_THROWS_AS(parse_state("squeezed-vacuum:r=1.44,cutoff=40"), Error);
}
