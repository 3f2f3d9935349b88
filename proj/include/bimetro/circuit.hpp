#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bimetro {

// Affine function of the estimation parameter: value(phi) = offset + slope*phi.
// Keeping the parameterization affine makes every derivative exact (the slope),
// so generator coefficients never rely on numerical differentiation.
struct Affine {
  double offset = 0.0;
  double slope = 0.0;
  double operator()(double phi) const { return offset + slope * phi; }
};

enum class Catalog { mach_zehnder, antisymmetric, symmetric, unbalanced, custom };

std::string to_string(Catalog tag);
std::optional<Catalog> catalog_from_string(std::string_view name);

// A lossless two-mode passive circuit whose four angles (mixing angle beta,
// global phase chi, transmission phase tau, reflection phase rho) depend
// affinely on the parameter to estimate.
struct CircuitSpec {
  Affine beta, chi, tau, rho;
  Catalog tag = Catalog::custom;

  static CircuitSpec from_catalog(Catalog tag);
};

// Mode-resolved transmission/reflection amplitudes of the circuit at fixed phi.
struct TransferMatrix {
  std::complex<double> t_plus, t_minus, r_plus, r_minus;

  // Matrix acting on single-particle amplitude columns (and, columnwise, on
  // the quadrature representation): [[T+, R-], [R+, T-]].
  Eigen::Matrix2cd single_particle() const;

  // Largest deviation from unitarity across both orderings of the defining
  // relations; zero for a lossless circuit.
  double unitarity_defect() const;
};

// Spectral data of the effective phase generator: diagonal coefficients
// a_plus/a_minus, mode-coupling coefficient b, eigenvalues eps_plus/eps_minus
// (|eps_plus| >= |eps_minus|), and the unitary that maps physical-mode
// operators to normal-mode operators (rows are the normal modes).
struct GeneratorSpectrum {
  double a_plus = 0.0;
  double a_minus = 0.0;
  std::complex<double> b{0.0, 0.0};
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  Eigen::Matrix2cd mixing = Eigen::Matrix2cd::Identity();
  // Set when b == 0 and a_plus == a_minus: any unitary diagonalizes, so the
  // identity is returned by convention (DEGENERATE_MIXING in the docs).
  bool degenerate = false;

  Eigen::Matrix2cd single_particle() const;  // [[a_plus, conj(b)], [b, a_minus]]
};

// Builds the spectrum (eigenvalues ordered by magnitude, sign ties broken
// toward +, phase-normalized mixing rows) from generator coefficients.
GeneratorSpectrum make_spectrum(double a_plus, double a_minus,
                                std::complex<double> b);

TransferMatrix transfer_matrix(const CircuitSpec& spec, double phi);
GeneratorSpectrum generator(const CircuitSpec& spec, double phi);

// Fisher information of the two-outcome single-particle interference
// probability (p_plus, p_minus) = (cos^2 beta, sin^2 beta).  At probability
// extremes the affine limit 4*beta_slope^2 is returned (SINGULAR_PROBABILITY
// convention); it is finite for every affine circuit.
double classical_fi_single_particle(const CircuitSpec& spec, double phi);

// Quantum Fisher information of one particle sent through the circuit:
// classical term plus the phase-anisotropy term 4 p+ p- (tau' - rho')^2.
double qfi_single_particle(const CircuitSpec& spec, double phi);

}  // namespace bimetro
