#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bimetro/bounds.hpp"
#include "bimetro/circuit.hpp"

namespace bimetro {

// Mode-rotation angles (global phase eta, relative phases chi/phi, mixing
// angle theta) of the 2x2 unitary applied after two single-mode squeezers.
struct UAngles {
  double eta = 0.0, chi = 0.0, phi = 0.0, theta = 0.0;
};

// Pure two-mode Gaussian state: squeeze (r_plus >= r_minus >= 0), rotate by
// the unitary built from the angles, then displace by alpha.
struct GaussianPureState {
  double r_plus = 0.0;
  double r_minus = 0.0;
  UAngles u;
  Eigen::Vector2cd alpha = Eigen::Vector2cd::Zero();

  GaussianPureState() = default;
  GaussianPureState(double r_plus, double r_minus, const UAngles& u,
                    const Eigen::Vector2cd& alpha);

  Eigen::Matrix2cd unitary() const;
};

// Quadrature-space description (ordering x+, x-, y+, y-) with covariance
// Gamma and displacement d = sqrt(2) (Re a+, Re a-, Im a+, Im a-).
struct CovarianceState {
  Eigen::Matrix4d gamma = 0.5 * Eigen::Matrix4d::Identity();
  Eigen::Vector4d d = Eigen::Vector4d::Zero();
};

struct GaussianNumberMoments {
  double mean = 0.0;
  double var = 0.0;
};

Eigen::Matrix2cd gaussian_unitary(const UAngles& u);

// Real symplectic-orthogonal image [[Re U, -Im U], [Im U, Re U]] of a mode
// unitary acting on the quadrature ordering above.
Eigen::Matrix4d symplectic_rotation(const Eigen::Matrix2cd& u);

Eigen::Matrix4d symplectic_form();  // [[0, I], [-I, 0]] in the xxyy ordering

CovarianceState to_covariance(const GaussianPureState& state);

// Pushes the covariance description through a lossless circuit at fixed phi.
CovarianceState evolve(const CovarianceState& state, const TransferMatrix& tm);

// QFI of the Gaussian probe under the generator eigenvalues, computed along
// two independent routes (closed form and covariance-trace form) that must
// agree to 1e-8; the closed-form value is returned.
double gaussian_qfi(const GaussianPureState& state, const EpsPair& eps);
double gaussian_qfi(const GaussianPureState& state, const GeneratorSpectrum& gen);

struct GaussianQfiPaths {
  double closed_form = 0.0;
  double covariance_form = 0.0;
};

// Diagnostic access to both routes (used by the self-verification suite).
GaussianQfiPaths gaussian_qfi_paths(const GaussianPureState& state,
                                    const EpsPair& eps);

GaussianNumberMoments gaussian_number_moments(const CovarianceState& state);
GaussianNumberMoments gaussian_number_moments(const GaussianPureState& state);

struct OptimalGaussian {
  GaussianPureState state;
  double qfi = 0.0;
};

// Best pure Gaussian probe at mean number n: all squeezing in the + normal
// mode with sinh^2 r = n, no displacement; QFI = 8 eps+^2 n (n+1).
OptimalGaussian optimal_gaussian(double n_mean, const EpsPair& eps);

// Largest violation of the pure-state condition (2 Gamma Omega)^2 = -1.
double purity_defect(const CovarianceState& state);

}  // namespace bimetro
