#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bimetro {

// Fault hooks for mutation-testing the suite itself: eps_sign_flip corrupts
// the generator eigenvalues used when scoring achieved QFI, which must make
// the bound-achievability check fail.
enum class FaultInjection { none, eps_sign_flip };

struct VerifyOptions {
  std::uint64_t seed = 12345;
  int samples = 400;  // constrained-distribution draws in the sampling check
  FaultInjection fault = FaultInjection::none;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::string note;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  int failed_count() const;
};

// Runs the self-verification suite: transfer unitarity, finite-difference
// generator consistency, bound saturation on sampled distributions,
// achievability of the bound, Gaussian two-path agreement, and
// Fock-vs-Gaussian cross checks.  Deterministic for a fixed seed.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace bimetro
