#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bimetro/bounds.hpp"
#include "bimetro/circuit.hpp"
#include "bimetro/errors.hpp"
#include "bimetro/fock.hpp"
#include "bimetro/gaussian.hpp"
#include "bimetro/json_io.hpp"
#include "bimetro/oracle.hpp"
#include "bimetro/parallel.hpp"
#include "bimetro/state_lang.hpp"
#include "bimetro/states.hpp"
#include "bimetro/verify.hpp"

namespace {

using bimetro::Json;

// CSV numbers use 17 significant digits so values survive a parse/emit round
// trip bit-exactly.
std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BIMETRO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw std::invalid_argument("BIMETRO_SEED must be an unsigned integer");
  }
  return 12345;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bimetro::CircuitSpec load_circuit(const std::string& text) {
  if (const auto tag = bimetro::catalog_from_string(text);
      tag && *tag != bimetro::Catalog::custom) {
    return bimetro::CircuitSpec::from_catalog(*tag);
  }
  std::string payload = text;
  if (!text.empty() && text.front() == '@') payload = slurp(text.substr(1));
  if (!payload.empty() && payload.front() == '{') {
    return bimetro::circuit_from_json(Json::parse(payload));
  }
  throw std::invalid_argument(
      "circuit must be a catalog name, inline JSON, or @file: " + text);
}

Json moments_json(const bimetro::NumberMoments& m) {
  return Json{{"mean_m", m.mean_m},   {"mean_n", m.mean_n},
              {"var_m", m.var_m},     {"var_n", m.var_n},
              {"cov_mn", m.cov_mn},   {"mean_total", m.mean_total},
              {"var_total", m.var_total}};
}

Json delta_json(double fisher, std::int64_t nu) {
  if (fisher <= 0.0) return nullptr;  // ZERO_INFORMATION convention
  return bimetro::cramer_rao(fisher, nu);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

bimetro::EpsPair resolve_eps(const std::vector<double>& eps_flag,
                             const std::string& circuit, double phi) {
  if (!eps_flag.empty()) {
    if (eps_flag.size() != 2) {
      throw std::invalid_argument("--eps takes exactly two values");
    }
    return {eps_flag[0], eps_flag[1]};
  }
  return bimetro::eps_pair(bimetro::generator(load_circuit(circuit), phi));
}

int run_qfi(const std::string& circuit, double phi, const std::string& state_text,
            std::int64_t nu) {
  const bimetro::CircuitSpec spec = load_circuit(circuit);
  const bimetro::GeneratorSpectrum gen = bimetro::generator(spec, phi);
  const bimetro::TwoModeFockState state = bimetro::parse_state(state_text);
  const double qfi = bimetro::qfi_pure(state, gen);
  Json out{{"qfi", qfi},
           {"nu", nu},
           {"delta_phi_min", delta_json(qfi, nu)},
           {"eps", Json::array({gen.eps_plus, gen.eps_minus})},
           {"moments", moments_json(bimetro::number_moments(state))},
           {"truncation_loss", state.truncation_loss()}};
  emit(out);
  return 0;
}

int run_bound(double n, double var, const std::string& case_name,
              const std::vector<double>& eps_flag, std::int64_t nu,
              const std::vector<std::string>& grid, bool csv) {
  bimetro::EpsPair eps{1.0, -1.0};
  if (!eps_flag.empty()) {
    if (eps_flag.size() != 2) {
      throw std::invalid_argument("--eps takes exactly two values");
    }
    eps = {eps_flag[0], eps_flag[1]};
  } else if (case_name == "antisymmetric") {
    eps = {1.0, -1.0};
  } else if (case_name == "symmetric") {
    eps = {1.0, 1.0};
  } else if (case_name == "unbalanced") {
    eps = {1.0, 0.0};
  } else {
    throw std::invalid_argument("unknown case: " + case_name);
  }

  if (!grid.empty()) {
    std::vector<bimetro::NumberBudget> budgets;
    for (const auto& chunk : grid) {
      std::stringstream ss(chunk);
      std::string item;
      while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
          throw std::invalid_argument("grid entries must be n,var pairs");
        }
        budgets.emplace_back(std::stod(item.substr(0, comma)),
                             std::stod(item.substr(comma + 1)));
      }
    }
    std::vector<std::string> rows(budgets.size());
    bimetro::parallel_index_for(budgets.size(), [&](std::size_t i) {
      const double f = bimetro::max_qfi(budgets[i], eps);
      std::ostringstream os;
      os << num(budgets[i].n_mean) << "," << num(budgets[i].var) << ","
         << num(eps.plus) << "," << num(eps.minus) << "," << num(f) << ","
         << (f > 0.0 ? num(bimetro::cramer_rao(f, nu)) : "inf");
      rows[i] = os.str();
    });
    std::cout << "n,var,eps_plus,eps_minus,max_qfi,delta_phi_min\n";
    for (const auto& row : rows) std::cout << row << "\n";
    return 0;
  }
  (void)csv;

  const bimetro::NumberBudget budget(n, var);
  const double f = bimetro::max_qfi(budget, eps);
  const bimetro::SigmaPair sg = bimetro::sigma(budget);
  Json cases;
  for (const auto& [name, which] :
       {std::pair<const char*, bimetro::SpecialCase>{
            "antisymmetric", bimetro::SpecialCase::antisymmetric},
        {"symmetric", bimetro::SpecialCase::symmetric},
        {"unbalanced", bimetro::SpecialCase::unbalanced}}) {
    cases[name] = bimetro::special_case_qfi(which, budget).qfi;
  }
  Json out{{"max_qfi", f},
           {"eps", Json::array({eps.plus, eps.minus})},
           {"nu", nu},
           {"delta_phi_min", delta_json(f, nu)},
           {"cases", cases},
           {"sigma", Json{{"plus", sg.sigma_plus}, {"minus", sg.sigma_minus}}}};
  emit(out);
  return 0;
}

int run_fig4(double n_min, double n_max) {
  if (!(n_min >= 1.0) || !(n_max >= n_min)) {
    throw std::invalid_argument("need 1 <= n-min <= n-max");
  }
  struct Case {
    const char* name;
    bimetro::EpsPair eps;
  };
  const Case cases[] = {{"antisymmetric", {1.0, -1.0}},
                        {"symmetric", {1.0, 1.0}},
                        {"unbalanced", {1.0, 0.0}}};
  std::vector<double> ns;
  for (double v = n_min; v <= n_max + 0.5; v += 1.0) ns.push_back(v);
  std::vector<std::string> rows(ns.size());
  bimetro::parallel_index_for(ns.size(), [&](std::size_t i) {
    std::ostringstream os;
    for (const Case& c : cases) {
      const bimetro::GaussianGap gap = bimetro::gaussian_gap(c.eps, ns[i]);
      os << num(ns[i]) << "," << c.name << "," << num(gap.f_gauss) << ","
         << num(gap.f_tilde) << "," << num(gap.relative_gap) << "\n";
    }
    rows[i] = os.str();
  });
  std::cout << "n,case,f_gauss_max,f_q_tilde_max,gap\n";
  for (const auto& row : rows) std::cout << row;
  return 0;
}

int run_gaussian(const std::string& circuit, double phi,
                 const std::vector<double>& eps_flag,
                 const std::string& state_json, bool optimal, double n,
                 std::int64_t nu) {
  const bimetro::EpsPair eps = resolve_eps(eps_flag, circuit, phi);
  bimetro::GaussianPureState state;
  double qfi = 0.0;
  if (optimal) {
    if (!(n > 0.0)) throw std::invalid_argument("--optimal requires --n > 0");
    const bimetro::OptimalGaussian best = bimetro::optimal_gaussian(n, eps);
    state = best.state;
    qfi = best.qfi;
  } else {
    if (state_json.empty()) {
      throw std::invalid_argument("provide --state-json or --optimal");
    }
    std::string payload = state_json;
    if (payload.front() == '@') payload = slurp(payload.substr(1));
    state = bimetro::gaussian_from_json(Json::parse(payload));
    qfi = bimetro::gaussian_qfi(state, eps);
  }
  const bimetro::GaussianNumberMoments mom =
      bimetro::gaussian_number_moments(state);
  Json out{{"qfi", qfi},
           {"nu", nu},
           {"delta_phi_min", delta_json(qfi, nu)},
           {"eps", Json::array({eps.plus, eps.minus})},
           {"state", bimetro::gaussian_to_json(state)},
           {"moments", Json{{"mean", mom.mean}, {"var", mom.var}}}};
  emit(out);
  return 0;
}

int run_optimal_state(const std::string& kind, double n, double var,
                      double phase, bool rounded, int cutoff,
                      const std::vector<double>& eps_flag,
                      const std::string& circuit, double phi,
                      const bimetro::CatPhases& phases, std::int64_t nu) {
  const bimetro::EpsPair eps = resolve_eps(eps_flag, circuit, phi);
  Json out{{"kind", kind}, {"eps", Json::array({eps.plus, eps.minus})}, {"nu", nu}};
  if (kind == "gaussian") {
    if (!(n > 0.0)) throw std::invalid_argument("gaussian kind requires --n > 0");
    const bimetro::OptimalGaussian best = bimetro::optimal_gaussian(n, eps);
    const bimetro::GaussianNumberMoments mom =
        bimetro::gaussian_number_moments(best.state);
    out["state"] = bimetro::gaussian_to_json(best.state);
    out["qfi"] = best.qfi;
    out["delta_phi_min"] = delta_json(best.qfi, nu);
    out["realized"] = Json{{"n", mom.mean}, {"var", mom.var}};
    emit(out);
    return 0;
  }

  const bimetro::NumberBudget budget(n, var);
  out["max_qfi"] = bimetro::max_qfi(budget, eps);
  const bimetro::GeneratorSpectrum gen =
      bimetro::make_spectrum(eps.plus, eps.minus, 0.0);
  if (kind == "quasi-noon") {
    const bimetro::QuasiNoonState qn = bimetro::quasi_noon(
        budget, phase,
        rounded ? bimetro::OccupationRounding::round
                : bimetro::OccupationRounding::strict);
    const double qfi = bimetro::qfi_pure(qn.state, gen);
    out["state"] = bimetro::fock_to_json(qn.state);
    out["qfi"] = qfi;
    out["delta_phi_min"] = delta_json(qfi, nu);
    out["realized"] = Json{{"n", qn.realized.n_mean}, {"var", qn.realized.var}};
    out["occupations"] = Json::array({qn.occupation_plus, qn.occupation_minus});
  } else if (kind == "poisson-cat") {
    const int c = cutoff > 0 ? cutoff : 0;
    bimetro::TwoModeFockState state =
        c > 0 ? bimetro::poissonian_cat(budget, phases, c)
              : bimetro::parse_state("poisson-cat:n=" + std::to_string(n) +
                                     ",var=" + std::to_string(var));
    const double qfi = bimetro::qfi_pure(state, gen);
    const bimetro::NumberMoments mom = bimetro::number_moments(state);
    out["state"] = bimetro::fock_to_json(state);
    out["qfi"] = qfi;
    out["delta_phi_min"] = delta_json(qfi, nu);
    out["realized"] = Json{{"n", mom.mean_total}, {"var", mom.var_total}};
    out["truncation_loss"] = state.truncation_loss();
  } else {
    throw std::invalid_argument(
        "kind must be quasi-noon, gaussian, or poisson-cat");
  }
  emit(out);
  return 0;
}

int run_verify(std::uint64_t seed, int samples, bool json_only) {
  bimetro::VerifyOptions options;
  options.seed = seed;
  options.samples = samples;
  const bimetro::VerificationReport report = bimetro::run_verification(options);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    if (!json_only) {
      std::fprintf(stderr, "[%s] %-26s max_err=%.3e tol=%.1e (%d samples)%s%s\n",
                   c.passed ? "PASS" : "FAIL", c.name.c_str(), c.max_error,
                   c.tolerance, c.samples, c.note.empty() ? "" : " — ",
                   c.note.c_str());
    }
    checks.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"max_error", c.max_error},
                          {"tolerance", c.tolerance},
                          {"samples", c.samples},
                          {"note", c.note}});
  }
  const int failed = report.failed_count();
  emit(Json{{"seed", report.seed},
            {"samples", samples},
            {"checks", checks},
            {"failed", failed}});
  if (failed == 0) return 0;
  // Failure exits live in the >= 3 range reserved for verification problems.
  return std::min(125, 2 + failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-mode bosonic phase-estimation toolkit"};
  app.require_subcommand(1);

  std::string circuit;
  double phi = 0.0;
  std::string state_text;
  std::int64_t nu = 1;
  double n = 0.0, var = 0.0;
  std::string case_name = "antisymmetric";
  std::vector<double> eps_flag;
  std::vector<std::string> grid;
  bool csv = false;
  double n_min = 1.0, n_max = 100.0;
  std::string state_json;
  bool optimal = false;
  std::string kind;
  double phase = 0.0;
  bool rounded = false;
  int cutoff = 0;
  bimetro::CatPhases phases;
  int samples = 400;
  bool json_only = false;
  std::uint64_t seed = 0;

  auto* qfi_cmd = app.add_subcommand("qfi", "QFI of a Fock probe through a circuit");
  qfi_cmd->add_option("--circuit", circuit, "catalog name, inline JSON, or @file")
      ->required();
  qfi_cmd->add_option("--phi", phi, "evaluation point");
  qfi_cmd->add_option("--state", state_text, "probe state (normal-mode basis)")
      ->required();
  qfi_cmd->add_option("--nu", nu, "repetition count");

  auto* bound_cmd = app.add_subcommand("bound", "optimal-probe QFI bound");
  bound_cmd->add_option("--n", n, "mean particle number");
  bound_cmd->add_option("--var", var, "particle-number variance");
  bound_cmd->add_option("--case", case_name,
                        "antisymmetric | symmetric | unbalanced");
  bound_cmd->add_option("--eps", eps_flag, "generator eigenvalues e+ e-")
      ->expected(2);
  bound_cmd->add_option("--nu", nu, "repetition count");
  bound_cmd->add_option("--grid", grid,
                        "semicolon-separated n,var pairs -> CSV sweep");
  bound_cmd->add_flag("--csv", csv, "CSV output for sweeps");

  auto* fig4_cmd =
      app.add_subcommand("fig4", "Gaussian-vs-optimal gap sweep (CSV)");
  fig4_cmd->add_option("--n-min", n_min, "first mean number");
  fig4_cmd->add_option("--n-max", n_max, "last mean number");

  auto* gauss_cmd = app.add_subcommand("gaussian", "QFI of a pure Gaussian probe");
  gauss_cmd->add_option("--circuit", circuit, "catalog name, inline JSON, or @file")
      ->default_val("antisymmetric");
  gauss_cmd->add_option("--phi", phi, "evaluation point");
  gauss_cmd->add_option("--eps", eps_flag, "generator eigenvalues e+ e-")
      ->expected(2);
  gauss_cmd->add_option("--state-json", state_json, "gaussian state JSON or @file");
  gauss_cmd->add_flag("--optimal", optimal, "use the optimal probe at --n");
  gauss_cmd->add_option("--n", n, "mean particle number for --optimal");
  gauss_cmd->add_option("--nu", nu, "repetition count");

  auto* opt_cmd = app.add_subcommand("optimal-state", "emit an optimal probe");
  opt_cmd->add_option("--kind", kind, "quasi-noon | gaussian | poisson-cat")
      ->required();
  opt_cmd->add_option("--n", n, "mean particle number")->required();
  opt_cmd->add_option("--var", var, "particle-number variance");
  opt_cmd->add_option("--phase", phase, "relative phase between branches");
  opt_cmd->add_flag("--rounded", rounded, "round non-integer occupations");
  opt_cmd->add_option("--cutoff", cutoff, "Fock cutoff override");
  opt_cmd->add_option("--eps", eps_flag, "generator eigenvalues e+ e-")
      ->expected(2);
  opt_cmd->add_option("--circuit", circuit, "circuit fixing the eigenvalues")
      ->default_val("antisymmetric");
  opt_cmd->add_option("--phi", phi, "evaluation point");
  opt_cmd->add_option("--dphi", phases.dphi, "phase ramp, first branch");
  opt_cmd->add_option("--phi0", phases.phi0, "phase offset, first branch");
  opt_cmd->add_option("--dphit", phases.dphi_tilde, "phase ramp, second branch");
  opt_cmd->add_option("--phit0", phases.phi0_tilde, "phase offset, second branch");
  opt_cmd->add_option("--nu", nu, "repetition count");

  auto* verify_cmd = app.add_subcommand("verify", "self-verification suite");
  verify_cmd->add_option("--seed", seed, "override BIMETRO_SEED / default seed");
  verify_cmd->add_option("--samples", samples, "sampling-check draws");
  verify_cmd->add_flag("--json", json_only, "suppress per-check stderr lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (qfi_cmd->parsed()) return run_qfi(circuit, phi, state_text, nu);
    if (bound_cmd->parsed()) {
      if (grid.empty() && !(n > 0.0)) {
        throw std::invalid_argument("bound requires --n/--var or --grid");
      }
      return run_bound(n, var, case_name, eps_flag, nu, grid, csv);
    }
    if (fig4_cmd->parsed()) return run_fig4(n_min, n_max);
    if (gauss_cmd->parsed())
      return run_gaussian(circuit, phi, eps_flag, state_json, optimal, n, nu);
    if (opt_cmd->parsed())
      return run_optimal_state(kind, n, var, phase, rounded, cutoff, eps_flag,
                               circuit, phi, phases, nu);
    if (verify_cmd->parsed()) {
      const std::uint64_t s =
          verify_cmd->count("--seed") > 0 ? seed : default_seed();
      return run_verify(s, samples, json_only);
    }
  } catch (const bimetro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
