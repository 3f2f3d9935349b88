#include "bimetro/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bimetro/errors.hpp"
#include "bimetro/random.hpp"

namespace bimetro {

GeneratorSpectrum fd_generator(const CircuitSpec& spec, double phi, double step) {
  if (!(step >= 1e-8 && step <= 1e-3)) {
    throw std::invalid_argument("finite-difference step must lie in [1e-8, 1e-3]");
  }
  const Eigen::Matrix2cd u0 = transfer_matrix(spec, phi).single_particle();
  const Eigen::Matrix2cd up = transfer_matrix(spec, phi + step).single_particle();
  const Eigen::Matrix2cd um = transfer_matrix(spec, phi - step).single_particle();
  const Eigen::Matrix2cd du = (up - um) / (2.0 * step);
  Eigen::Matrix2cd h = std::complex<double>(0.0, 1.0) * u0.adjoint() * du;
  h = 0.5 * (h + h.adjoint()).eval();  // symmetrize away O(step^2) skew
  return make_spectrum(h(0, 0).real(), h(1, 1).real(), h(1, 0));
}

namespace {

struct Grid {
  int side = 0;  // occupations 0..grid_max per mode
  Eigen::VectorXd w1, w2;  // total number and its square per cell

  explicit Grid(int grid_max) : side(grid_max + 1) {
    const int cells = side * side;
    w1.resize(cells);
    w2.resize(cells);
    for (int m = 0; m < side; ++m) {
      for (int n = 0; n < side; ++n) {
        const double t = m + n;
        w1[m * side + n] = t;
        w2[m * side + n] = t * t;
      }
    }
  }
};

ConstrainedDistribution finalize(const Eigen::VectorXd& p, const Grid& grid,
                                 const NumberBudget& budget, int iterations) {
  ConstrainedDistribution out;
  const double total = p.sum();
  const Eigen::VectorXd q = p / total;
  const double mean = grid.w1.dot(q);
  const double second = grid.w2.dot(q);
  out.n_mean = budget.n_mean;
  out.var = budget.var;
  out.mean_err = std::abs(mean - budget.n_mean);
  out.var_err = std::abs((second - mean * mean) - budget.var);
  out.iterations = iterations;
  for (int m = 0; m < grid.side; ++m) {
    for (int n = 0; n < grid.side; ++n) {
      const double v = q[m * grid.side + n];
      if (v > 0.0) out.probs[{m, n}] = v;
    }
  }
  return out;
}

}  // namespace

ConstrainedDistribution sample_constrained_distribution(
    const NumberBudget& budget, int grid_max, std::uint64_t seed,
    const SamplerOptions& options) {
  const double spread = std::sqrt(budget.var);
  if (grid_max < 1 || grid_max < budget.n_mean + 3.0 * spread) {
    std::ostringstream os;
    os << "grid_max " << grid_max << " cannot hold mean " << budget.n_mean
       << " with spread " << spread;
    throw Error(ErrorCode::infeasible_grid, os.str());
  }

  Rng rng(seed);
  const Grid grid(grid_max);
  const int cells = grid.side * grid.side;

  if (budget.var == 0.0) {
    // Zero variance pins the total number to a single (integer) shell.
    const long shell = std::llround(budget.n_mean);
    if (std::abs(budget.n_mean - double(shell)) > 1e-9) {
      throw Error(ErrorCode::infeasible_grid,
                  "zero variance requires an integer mean number");
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(cells);
    for (int m = 0; m <= std::min<long>(shell, grid_max); ++m) {
      const long n = shell - m;
      if (n <= grid_max) p[m * grid.side + int(n)] = uni(rng);
    }
    return finalize(p, grid, budget, 0);
  }

  // Random start: positive noise under an envelope around the target shell,
  // or the two-branch optimum plus noise when biasing toward the bound.  The
  // start is hard-zero outside |t - mean| <= 2*width: cells that far out get
  // only vanishing mass anyway, yet while "in support" their huge t^4 terms
  // dominate the projection's curvature and slow it to a shell-by-shell
  // crawl.  The dual still re-activates outside cells if the moments need
  // them, so the window costs no generality.
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double width = 2.0 * spread + 2.0;
  const auto windowed = [&](int m, int n, double value) {
    const double dt = (m + n - budget.n_mean) / width;
    return std::abs(dt) <= 2.0 ? value : 0.0;
  };
  Eigen::VectorXd p(cells);
  if (options.bias_toward_optimum) {
    const SigmaPair sg = sigma(budget);
    const long mp = std::llround(budget.n_mean * (1.0 + sg.sigma_plus) / 2.0);
    const long mm = std::llround(budget.n_mean * (1.0 + sg.sigma_minus) / 2.0);
    for (int m = 0; m < grid.side; ++m) {
      for (int n = 0; n < grid.side; ++n) {
        p[m * grid.side + n] = windowed(m, n, 1e-6 * uni(rng));
      }
    }
    if (mp <= grid_max) p[int(mp) * grid.side] += 1.0 / (1.0 + sg.sigma_plus);
    if (mm <= grid_max) p[int(mm)] += 1.0 / (1.0 + sg.sigma_minus);
  } else {
    for (int m = 0; m < grid.side; ++m) {
      for (int n = 0; n < grid.side; ++n) {
        const double dt = (m + n - budget.n_mean) / width;
        p[m * grid.side + n] =
            windowed(m, n, uni(rng) * std::exp(-0.5 * dt * dt));
      }
    }
  }

  // Normalize the start: projecting a unit-mass table keeps the dual
  // correction small, so the tail-suppressing multiplier stays negative and
  // far shells never re-enter the support.
  const double start_mass = p.sum();
  if (start_mass <= 0.0) {
    throw Error(ErrorCode::infeasible_grid, "empty start distribution");
  }
  p /= start_mass;

  // Constraint rows in centered units v = (t - mean)/scale: the same affine
  // subspace as rows (1, t, t^2) but with a well-conditioned Gram.
  const double scale = std::max(1.0, spread);
  Eigen::VectorXd v1(cells);
  for (int i = 0; i < cells; ++i) v1[i] = (grid.w1[i] - budget.n_mean) / scale;
  Eigen::Matrix<double, 3, Eigen::Dynamic> a(3, cells);
  a.row(0).setOnes();
  a.row(1) = v1.transpose();
  a.row(2) = v1.array().square().matrix().transpose();
  const Eigen::Vector3d b(1.0, 0.0, budget.var / (scale * scale));

  // Exact Euclidean projection of the start onto {p >= 0, Ap = b} through the
  // three-variable dual: p(lambda) = max(0, p0 + A^T lambda), with lambda
  // solving the monotone piecewise-linear system A p(lambda) = b by damped
  // semismooth Newton.  (Alternating projection stalls on this geometry: with
  // most cells pinned at zero the subspace meets the orthant at a grazing
  // angle.)
  const Eigen::VectorXd p0 = p;
  Eigen::Vector3d lambda = Eigen::Vector3d::Zero();
  Eigen::VectorXd trial(cells);
  const auto residual_at = [&](const Eigen::Vector3d& lam,
                               Eigen::VectorXd& point) -> Eigen::Vector3d {
    point = (p0 + a.transpose() * lam).cwiseMax(0.0);
    return a * point - b;
  };
  Eigen::Vector3d f = residual_at(lambda, p);
  for (int it = 1; it <= options.max_iterations; ++it) {
    if (f.cwiseAbs().maxCoeff() <= options.tolerance) {
      ConstrainedDistribution out = finalize(p, grid, budget, it - 1);
      const double tol = options.tolerance *
                         std::max({1.0, budget.n_mean, budget.var});
      if (out.mean_err <= tol * 10.0 && out.var_err <= tol * 10.0) return out;
      break;
    }
    const Eigen::VectorXd support =
        (p.array() > 0.0).cast<double>().matrix();
    Eigen::Matrix3d jac = a * support.asDiagonal() * a.transpose();
    if (jac.trace() <= 0.0) break;  // support emptied: no feasible point
    jac += 1e-14 * jac.trace() * Eigen::Matrix3d::Identity();
    const Eigen::Vector3d step = jac.ldlt().solve(-f);
    const double base = f.cwiseAbs().maxCoeff();
    double alpha = 1.0;
    for (int halvings = 0; halvings < 40; ++halvings, alpha *= 0.5) {
      const Eigen::Vector3d ft = residual_at(lambda + alpha * step, trial);
      if (ft.cwiseAbs().maxCoeff() <= (1.0 - 1e-4 * alpha) * base) break;
    }
    lambda += alpha * step;
    f = residual_at(lambda, p);
  }
  throw Error(ErrorCode::infeasible_grid,
              "projection failed to reach the constraints within the "
              "iteration cap");
}

double distribution_qfi(const ProbabilityMap& probs, const EpsPair& eps) {
  double e1 = 0.0, e2 = 0.0, total = 0.0;
  for (const auto& [idx, w] : probs) {
    const double val = eps.plus * idx.first + eps.minus * idx.second;
    e1 += w * val;
    e2 += w * val * val;
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("empty distribution");
  e1 /= total;
  e2 /= total;
  return 4.0 * (e2 - e1 * e1);
}

double variance_by_operator(const TwoModeFockState& state,
                            const GeneratorSpectrum& gen) {
  // <H>, <H^2> by explicit application of the diagonal operator to each
  // basis amplitude.
  double e1 = 0.0, e2 = 0.0;
  for (const auto& [idx, amp] : state.amplitudes()) {
    const double val = gen.eps_plus * idx.first + gen.eps_minus * idx.second;
    const double w = std::norm(amp);
    e1 += w * val;
    e2 += w * val * val;
  }
  return e2 - e1 * e1;
}

}  // namespace bimetro
