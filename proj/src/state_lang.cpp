#include "bimetro/state_lang.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "bimetro/states.hpp"

namespace bimetro {

namespace {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> keyed;
  std::set<std::string> flags;
};

Args split_args(std::string_view text) {
  Args args;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    if (!tok.empty()) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string_view::npos) {
        // bare token: positional if it looks numeric, flag otherwise
        const char c = tok.front();
        if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.') {
          args.positional.emplace_back(tok);
        } else {
          args.flags.emplace(tok);
        }
      } else {
        args.keyed.emplace(std::string(tok.substr(0, eq)),
                           std::string(tok.substr(eq + 1)));
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return args;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
}

int to_int(const std::string& text, const std::string& what) {
  const double v = to_double(text, what);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - double(i)) > 1e-9) {
    throw std::invalid_argument(what + " must be an integer");
  }
  return i;
}

class ArgReader {
 public:
  ArgReader(Args args, std::string name)
      : args_(std::move(args)), name_(std::move(name)) {}

  std::optional<double> keyed(const std::string& key) {
    auto it = args_.keyed.find(key);
    if (it == args_.keyed.end()) return std::nullopt;
    used_keys_.insert(key);
    return to_double(it->second, name_ + " " + key);
  }

  double require(const std::string& key) {
    auto v = keyed(key);
    if (!v) throw std::invalid_argument(name_ + " requires " + key + "=");
    return *v;
  }

  bool flag(const std::string& key) {
    if (args_.flags.count(key)) {
      used_flags_.insert(key);
      return true;
    }
    return false;
  }

  const std::vector<std::string>& positional() const { return args_.positional; }

  void finish(std::size_t max_positional = 0) const {
    for (const auto& [key, value] : args_.keyed) {
      (void)value;
      if (!used_keys_.count(key)) {
        throw std::invalid_argument("unknown " + name_ + " key: " + key);
      }
    }
    for (const auto& f : args_.flags) {
      if (!used_flags_.count(f)) {
        throw std::invalid_argument("unknown " + name_ + " flag: " + f);
      }
    }
    if (args_.positional.size() > max_positional) {
      throw std::invalid_argument(name_ + " takes at most " +
                                  std::to_string(max_positional) +
                                  " positional arguments");
    }
  }

 private:
  Args args_;
  std::string name_;
  std::set<std::string> used_keys_;
  std::set<std::string> used_flags_;
};

}  // namespace

TwoModeFockState parse_state(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string name(text.substr(0, colon));
  ArgReader args(
      split_args(colon == std::string_view::npos ? std::string_view{}
                                                 : text.substr(colon + 1)),
      name);

  if (name == "noon") {
    if (args.positional().size() != 1) {
      throw std::invalid_argument("usage: noon:N[,phase=x]");
    }
    const int n = to_int(args.positional()[0], "noon occupation");
    const double phase = args.keyed("phase").value_or(0.0);
    args.finish(1);
    return noon(n, phase);
  }
  if (name == "quasi-noon") {
    const NumberBudget budget(args.require("n"), args.require("var"));
    const double phase = args.keyed("phase").value_or(0.0);
    const auto rounding = args.flag("rounded") ? OccupationRounding::round
                                               : OccupationRounding::strict;
    args.finish();
    return quasi_noon(budget, phase, rounding).state;
  }
  if (name == "poisson-cat") {
    const NumberBudget budget(args.require("n"), args.require("var"));
    CatPhases phases;
    phases.dphi = args.keyed("dphi").value_or(0.0);
    phases.phi0 = args.keyed("phi0").value_or(0.0);
    phases.dphi_tilde = args.keyed("dphit").value_or(0.0);
    phases.phi0_tilde = args.keyed("phit0").value_or(0.0);
    int cutoff;
    if (auto c = args.keyed("cutoff"); c.has_value()) {
      cutoff = static_cast<int>(*c);
    } else {
      const PoissonWeights mu = poisson_mu(budget);
      const double lam = budget.n_mean / (2.0 * std::min(mu.mu_plus, mu.mu_minus));
      cutoff = static_cast<int>(std::ceil(lam + 14.0 * std::sqrt(lam + 1.0)) + 20);
    }
    args.finish();
    return poissonian_cat(budget, phases, cutoff);
  }
  if (name == "squeezed-vacuum") {
    const double r = args.require("r");
    int cutoff;
    if (auto c = args.keyed("cutoff"); c.has_value()) {
      cutoff = static_cast<int>(*c);
    } else {
      cutoff = squeezed_vacuum_cutoff_for_loss(r, 1e-10);
    }
    args.finish();
    return squeezed_vacuum_fock(r, cutoff);
  }
  if (name == "coherent") {
    const std::complex<double> ap(args.keyed("re").value_or(0.0),
                                  args.keyed("im").value_or(0.0));
    const std::complex<double> am(args.keyed("re2").value_or(0.0),
                                  args.keyed("im2").value_or(0.0));
    const double total = std::norm(ap) + std::norm(am);
    const int cutoff = static_cast<int>(args.keyed("cutoff").value_or(
        std::ceil(total + 12.0 * std::sqrt(total + 1.0)) + 8.0));
    args.finish();
    return coherent_fock(ap, am, cutoff);
  }
  if (name == "fock") {
    if (args.positional().size() != 2) {
      throw std::invalid_argument("usage: fock:m,n");
    }
    const int m = to_int(args.positional()[0], "fock occupation");
    const int n = to_int(args.positional()[1], "fock occupation");
    args.finish(2);
    return fock_basis_state(m, n);
  }
  throw std::invalid_argument("unknown state constructor: " + name);
}

}  // namespace bimetro
