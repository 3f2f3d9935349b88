#include "bimetro/verify.hpp"

#include <set>
#include <string>

#include <doctest.h>

#include "testutil.hpp"

using namespace bimetro;

namespace {

VerifyOptions small_options(std::uint64_t seed) {
  VerifyOptions options;
  options.seed = seed;
  options.samples = 24;
  return options;
}

}  // namespace

TEST_CASE("verification suite passes and names every check") {
  const VerificationReport report = run_verification(small_options(12345));
  CHECK(report.seed == 12345);
  CHECK(report.failed_count() == 0);
  std::set<std::string> names;
  for (const auto& c : report.checks) {
    names.insert(c.name);
    CHECK(c.passed);
    CHECK(c.max_error <= c.tolerance);
    CHECK(c.samples > 0);
  }
  const std::set<std::string> expected = {
      "transfer-unitarity",    "generator-fd-consistency",
      "bound-sampling",        "bound-achievability",
      "gaussian-two-path",     "fock-gaussian-consistency"};
  CHECK(names == expected);
}

TEST_CASE("verification is deterministic for a fixed seed") {
  const VerificationReport a = run_verification(small_options(777));
  const VerificationReport b = run_verification(small_options(777));
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].passed == b.checks[i].passed);
    CHECK(a.checks[i].max_error == b.checks[i].max_error);  // bitwise
  }
  const VerificationReport c = run_verification(small_options(778));
  CHECK(c.failed_count() == 0);  // robust across seeds, not just the default
}

TEST_CASE("injected eigenvalue sign fault is caught by achievability") {
  VerifyOptions options = small_options(12345);
  options.fault = FaultInjection::eps_sign_flip;
  const VerificationReport report = run_verification(options);
  CHECK(report.failed_count() == 1);
  for (const auto& c : report.checks) {
    if (c.name == "bound-achievability") {
      CHECK_FALSE(c.passed);
    } else {
      CHECK(c.passed);
    }
  }
}
