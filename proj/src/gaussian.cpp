#include "bimetro/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bimetro/errors.hpp"

namespace bimetro {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

GaussianPureState::GaussianPureState(double r_plus_, double r_minus_,
                                     const UAngles& u_,
                                     const Eigen::Vector2cd& alpha_)
    : r_plus(r_plus_), r_minus(r_minus_), u(u_), alpha(alpha_) {
  if (!(r_plus >= r_minus && r_minus >= 0.0)) {
    throw std::invalid_argument(
        "squeezing parameters must satisfy r_plus >= r_minus >= 0");
  }
}

Eigen::Matrix2cd gaussian_unitary(const UAngles& u) {
  const double c = std::cos(u.theta / 2.0);
  const double s = std::sin(u.theta / 2.0);
  Eigen::Matrix2cd m;
  m << std::exp(-kI * ((u.chi + u.phi) / 2.0)) * c,
      -std::exp(kI * ((u.chi - u.phi) / 2.0)) * s,
      std::exp(-kI * ((u.chi - u.phi) / 2.0)) * s,
      std::exp(kI * ((u.chi + u.phi) / 2.0)) * c;
  return std::exp(-kI * (u.eta / 2.0)) * m;
}

Eigen::Matrix2cd GaussianPureState::unitary() const {
  return gaussian_unitary(u);
}

Eigen::Matrix4d symplectic_rotation(const Eigen::Matrix2cd& u) {
  Eigen::Matrix4d r;
  r.topLeftCorner<2, 2>() = u.real();
  r.topRightCorner<2, 2>() = -u.imag();
  r.bottomLeftCorner<2, 2>() = u.imag();
  r.bottomRightCorner<2, 2>() = u.real();
  return r;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  omega.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  return omega;
}

CovarianceState to_covariance(const GaussianPureState& state) {
  const Eigen::Matrix4d r = symplectic_rotation(state.unitary());
  Eigen::Vector4d q2;
  q2 << std::exp(2.0 * state.r_plus), std::exp(2.0 * state.r_minus),
      std::exp(-2.0 * state.r_plus), std::exp(-2.0 * state.r_minus);
  CovarianceState cov;
  cov.gamma = 0.5 * r * q2.asDiagonal() * r.transpose();
  cov.d << std::sqrt(2.0) * state.alpha(0).real(),
      std::sqrt(2.0) * state.alpha(1).real(),
      std::sqrt(2.0) * state.alpha(0).imag(),
      std::sqrt(2.0) * state.alpha(1).imag();
  return cov;
}

CovarianceState evolve(const CovarianceState& state, const TransferMatrix& tm) {
  const double defect = tm.unitarity_defect();
  if (defect > 1e-12) {
    std::ostringstream os;
    os << "transfer matrix deviates from unitarity by " << defect;
    throw Error(ErrorCode::non_unitary, os.str());
  }
  const Eigen::Matrix4d r = symplectic_rotation(tm.single_particle());
  CovarianceState out;
  out.gamma = r * state.gamma * r.transpose();
  out.d = r * state.d;
  return out;
}

double purity_defect(const CovarianceState& state) {
  const Eigen::Matrix4d m = 2.0 * state.gamma * symplectic_form();
  return (m * m + Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
}

namespace {

// Inverse of a pure covariance matrix via the symplectic identity
// Gamma^{-1} = 4 Omega^T Gamma Omega; validated against Gamma afterwards.
Eigen::Matrix4d pure_inverse(const Eigen::Matrix4d& gamma) {
  const Eigen::Matrix4d omega = symplectic_form();
  const Eigen::Matrix4d inv = 4.0 * omega.transpose() * gamma * omega;
  const double defect =
      (gamma * inv - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
  const double scale = gamma.cwiseAbs().maxCoeff();
  if (defect > 1e-8 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "covariance matrix is not invertibly pure (defect " << defect << ")";
    throw Error(ErrorCode::singular_covariance, os.str());
  }
  return inv;
}

double closed_form_qfi(const GaussianPureState& state, const EpsPair& eps) {
  const double mean_eps = 0.5 * (eps.plus + eps.minus);
  const double diff_eps = eps.plus - eps.minus;
  const double ct = std::cos(state.u.theta);
  const double st = std::sin(state.u.theta);
  const double schi = std::sin(state.u.chi);
  const double sp = std::sinh(2.0 * state.r_plus);
  const double sm = std::sinh(2.0 * state.r_minus);
  const double a_plus = mean_eps + 0.5 * diff_eps * ct;
  const double a_minus = mean_eps - 0.5 * diff_eps * ct;
  const double spm = std::sinh(state.r_plus + state.r_minus);
  double f1 = 2.0 * a_plus * a_plus * sp * sp + 2.0 * a_minus * a_minus * sm * sm +
              diff_eps * diff_eps * st * st *
                  (spm * spm - schi * schi * sp * sm);

  // Displacement contribution: 2 v^dag K v with v = (U^dag e a; U^T e a*) and
  // K the cosh/sinh block matrix of the squeezers.
  const Eigen::Matrix2cd u = state.unitary();
  Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
  e(0, 0) = eps.plus;
  e(1, 1) = eps.minus;
  const Eigen::Vector2cd v1 = u.adjoint() * e * state.alpha;
  const Eigen::Vector2cd v2 = u.transpose() * e * state.alpha.conjugate();
  Eigen::Vector2cd ch(std::cosh(2.0 * state.r_plus), std::cosh(2.0 * state.r_minus));
  Eigen::Vector2cd sh(std::sinh(2.0 * state.r_plus), std::sinh(2.0 * state.r_minus));
  const std::complex<double> quad =
      v1.dot(ch.asDiagonal() * v1 + sh.asDiagonal() * v2) +
      v2.dot(sh.asDiagonal() * v1 + ch.asDiagonal() * v2);
  const double f2 = 2.0 * quad.real();
  return f1 + f2;
}

double covariance_form_qfi(const GaussianPureState& state, const EpsPair& eps) {
  const CovarianceState cov = to_covariance(state);
  const Eigen::Matrix4d inv = pure_inverse(cov.gamma);
  // 4x4 generator in quadrature space for the number-diagonal 2x2 generator
  // e = diag(eps+, eps-): blocks [[i Im e, i Re e], [-i Re e, i Im e]].
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  Eigen::Matrix2cd e2 = Eigen::Matrix2cd::Zero();
  e2(0, 0) = eps.plus;
  e2(1, 1) = eps.minus;
  h.topRightCorner<2, 2>() = kI * e2;
  h.bottomLeftCorner<2, 2>() = -kI * e2;

  const Eigen::Matrix4cd gamma_c = cov.gamma.cast<std::complex<double>>();
  const Eigen::Matrix4cd inv_c = inv.cast<std::complex<double>>();
  const std::complex<double> trace_term =
      (h * inv_c * h * gamma_c).trace() - (h * h).trace();
  const Eigen::Vector4cd hd = h * cov.d.cast<std::complex<double>>();
  const std::complex<double> disp_term = hd.dot(inv_c * hd);  // hd^dag inv hd
  return 0.5 * trace_term.real() + disp_term.real();
}

}  // namespace

GaussianQfiPaths gaussian_qfi_paths(const GaussianPureState& state,
                                    const EpsPair& eps) {
  return {closed_form_qfi(state, eps), covariance_form_qfi(state, eps)};
}

double gaussian_qfi(const GaussianPureState& state, const EpsPair& eps) {
  const GaussianQfiPaths paths = gaussian_qfi_paths(state, eps);
  const double scale =
      std::max({1.0, std::abs(paths.closed_form), std::abs(paths.covariance_form)});
  if (std::abs(paths.closed_form - paths.covariance_form) > 1e-8 * scale) {
    std::ostringstream os;
    os << "internal QFI routes disagree: " << paths.closed_form << " vs "
       << paths.covariance_form;
    throw std::logic_error(os.str());
  }
  return paths.closed_form;
}

double gaussian_qfi(const GaussianPureState& state, const GeneratorSpectrum& gen) {
  return gaussian_qfi(state, eps_pair(gen));
}

GaussianNumberMoments gaussian_number_moments(const CovarianceState& state) {
  // First and second moments of the total number operator from Gaussian
  // moment factorization:  <N> = (Tr Gamma + |d|^2)/2 - 1 and
  // Var N = Tr(Gamma^2)/2 - 1/2 + d^T Gamma d.
  GaussianNumberMoments mom;
  mom.mean = 0.5 * (state.gamma.trace() + state.d.squaredNorm()) - 1.0;
  mom.var = 0.5 * (state.gamma * state.gamma).trace() - 0.5 +
            state.d.dot(state.gamma * state.d);
  return mom;
}

GaussianNumberMoments gaussian_number_moments(const GaussianPureState& state) {
  return gaussian_number_moments(to_covariance(state));
}

OptimalGaussian optimal_gaussian(double n_mean, const EpsPair& eps) {
  if (!(n_mean > 0.0)) throw std::invalid_argument("mean number must be positive");
  const double r =
      0.5 * std::log(1.0 + 2.0 * n_mean +
                     2.0 * std::sqrt(n_mean * (n_mean + 1.0)));
  OptimalGaussian out;
  out.state = GaussianPureState(r, 0.0, UAngles{}, Eigen::Vector2cd::Zero());
  out.qfi = 8.0 * eps.plus * eps.plus * n_mean * (n_mean + 1.0);
  return out;
}

}  // namespace bimetro
