#include "bimetro/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bimetro {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::string to_string(Catalog tag) {
  switch (tag) {
    case Catalog::mach_zehnder: return "mach_zehnder";
    case Catalog::antisymmetric: return "antisymmetric";
    case Catalog::symmetric: return "symmetric";
    case Catalog::unbalanced: return "unbalanced";
    case Catalog::custom: return "custom";
  }
  return "custom";
}

std::optional<Catalog> catalog_from_string(std::string_view name) {
  if (name == "mach_zehnder") return Catalog::mach_zehnder;
  if (name == "antisymmetric") return Catalog::antisymmetric;
  if (name == "symmetric") return Catalog::symmetric;
  if (name == "unbalanced") return Catalog::unbalanced;
  if (name == "custom") return Catalog::custom;
  return std::nullopt;
}

CircuitSpec CircuitSpec::from_catalog(Catalog tag) {
  CircuitSpec s;
  s.tag = tag;
  switch (tag) {
    case Catalog::mach_zehnder:
      // Balanced interferometer: beta = phi/2 with a fixed -pi/2 reflection
      // phase; pure mode-coupling generator.
      s.beta = {0.0, 0.5};
      s.rho = {-std::numbers::pi / 2.0, 0.0};
      break;
    case Catalog::antisymmetric:
      s.tau = {0.0, 1.0};  // opposite phases on the two modes
      break;
    case Catalog::symmetric:
      s.chi = {0.0, 1.0};  // common phase on both modes
      break;
    case Catalog::unbalanced:
      s.chi = {0.0, 0.5};  // phase on one mode only: chi + tau = phi, chi - tau = 0
      s.tau = {0.0, 0.5};
      break;
    case Catalog::custom:
      throw std::invalid_argument("custom circuits carry no catalog defaults");
  }
  return s;
}

Eigen::Matrix2cd TransferMatrix::single_particle() const {
  Eigen::Matrix2cd u;
  u << t_plus, r_minus, r_plus, t_minus;
  return u;
}

double TransferMatrix::unitarity_defect() const {
  const Eigen::Matrix2cd u = single_particle();
  const Eigen::Matrix2cd a = u.adjoint() * u - Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd b = u * u.adjoint() - Eigen::Matrix2cd::Identity();
  return std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

Eigen::Matrix2cd GeneratorSpectrum::single_particle() const {
  Eigen::Matrix2cd h;
  h << a_plus, std::conj(b), b, a_minus;
  return h;
}

TransferMatrix transfer_matrix(const CircuitSpec& spec, double phi) {
  const double beta = spec.beta(phi);
  const double chi = spec.chi(phi);
  const double tau = spec.tau(phi);
  const double rho = spec.rho(phi);
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  TransferMatrix tm;
  tm.t_plus = std::exp(-kI * (chi + tau)) * cb;
  tm.t_minus = std::exp(-kI * (chi - tau)) * cb;
  tm.r_plus = -kI * std::exp(-kI * (chi + rho)) * sb;
  tm.r_minus = -kI * std::exp(-kI * (chi - rho)) * sb;
  return tm;
}

GeneratorSpectrum make_spectrum(double a_plus, double a_minus,
                                std::complex<double> b) {
  GeneratorSpectrum g;
  g.a_plus = a_plus;
  g.a_minus = a_minus;
  g.b = b;

  const double sum = a_plus + a_minus;
  const double diff = a_plus - a_minus;
  const double disc = std::sqrt(diff * diff + 4.0 * std::norm(b));
  // Magnitude-ordered eigenvalues; the sign convention resolves the sum == 0
  // tie toward +, and every downstream quantity depends only on even
  // combinations of the pair.
  const double sgn = (sum >= 0.0) ? 1.0 : -1.0;
  g.eps_plus = 0.5 * sgn * (std::abs(sum) + disc);
  g.eps_minus = 0.5 * sgn * (std::abs(sum) - disc);

  if (b == std::complex<double>{0.0, 0.0}) {
    if (a_plus == a_minus) {
      g.degenerate = true;  // any basis works; keep the identity
      return g;
    }
    // Diagonal generator: attach each normal mode to the physical mode whose
    // coefficient equals its eigenvalue.
    if (std::abs(g.eps_plus - a_plus) <= std::abs(g.eps_plus - a_minus)) {
      g.mixing = Eigen::Matrix2cd::Identity();
    } else {
      g.mixing << 0.0, 1.0, 1.0, 0.0;
    }
    return g;
  }

  // Rows (b, eps - a_plus) are orthogonal because
  // (eps_plus - a_plus)(eps_minus - a_plus) = -|b|^2.
  const double dp = g.eps_plus - a_plus;
  const double dm = g.eps_minus - a_plus;
  Eigen::Vector2cd row_p(b, std::complex<double>(dp, 0.0));
  Eigen::Vector2cd row_m(b, std::complex<double>(dm, 0.0));
  row_p /= row_p.norm();
  row_m /= row_m.norm();
  // Phase convention: first nonzero entry of each row real positive.
  const std::complex<double> ph = std::conj(b) / std::abs(b);
  row_p *= ph;
  row_m *= ph;
  g.mixing.row(0) = row_p.transpose();
  g.mixing.row(1) = row_m.transpose();
  return g;
}

GeneratorSpectrum generator(const CircuitSpec& spec, double phi) {
  const double bp = spec.beta.slope;
  const double cp = spec.chi.slope;
  const double tp = spec.tau.slope;
  const double rp = spec.rho.slope;
  const double two_beta = 2.0 * spec.beta(phi);
  const double a_plus = cp + 0.5 * ((tp + rp) + (tp - rp) * std::cos(two_beta));
  const double a_minus = cp - 0.5 * ((tp + rp) + (tp - rp) * std::cos(two_beta));
  const std::complex<double> b =
      (std::complex<double>(bp, 0.0) +
       0.5 * kI * (tp - rp) * std::sin(two_beta)) *
      std::exp(-kI * (spec.tau(phi) + spec.rho(phi)));
  return make_spectrum(a_plus, a_minus, b);
}

double classical_fi_single_particle(const CircuitSpec& spec, double phi) {
  const double beta = spec.beta(phi);
  const double p_plus = std::cos(beta) * std::cos(beta);
  const double p_minus = std::sin(beta) * std::sin(beta);
  const double dp = -spec.beta.slope * std::sin(2.0 * beta);
  const double denom = p_plus * p_minus;
  if (denom < 1e-200) {
    // Probability extreme: the ratio has the finite affine limit.
    return 4.0 * spec.beta.slope * spec.beta.slope;
  }
  return dp * dp / denom;
}

double qfi_single_particle(const CircuitSpec& spec, double phi) {
  const double beta = spec.beta(phi);
  const double p_plus = std::cos(beta) * std::cos(beta);
  const double p_minus = std::sin(beta) * std::sin(beta);
  const double anis = spec.tau.slope - spec.rho.slope;
  return classical_fi_single_particle(spec, phi) +
         4.0 * p_plus * p_minus * anis * anis;
}

}  // namespace bimetro
