#include "bimetro/json_io.hpp"

#include <stdexcept>

namespace bimetro {

namespace {

Json affine_to_json(const Affine& a) { return Json::array({a.offset, a.slope}); }

Affine affine_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("affine angle must be [offset, slope]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json circuit_to_json(const CircuitSpec& spec) {
  if (spec.tag != Catalog::custom) {
    return Json{{"catalog", to_string(spec.tag)}};
  }
  return Json{{"beta", affine_to_json(spec.beta)},
              {"chi", affine_to_json(spec.chi)},
              {"tau", affine_to_json(spec.tau)},
              {"rho", affine_to_json(spec.rho)}};
}

CircuitSpec circuit_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("circuit must be a JSON object");
  if (j.contains("catalog")) {
    const auto name = j.at("catalog").get<std::string>();
    const auto tag = catalog_from_string(name);
    if (!tag || *tag == Catalog::custom) {
      throw std::invalid_argument("unknown catalog circuit: " + name);
    }
    return CircuitSpec::from_catalog(*tag);
  }
  CircuitSpec spec;
  bool any = false;
  const std::pair<const char*, Affine*> angles[] = {{"beta", &spec.beta},
                                                    {"chi", &spec.chi},
                                                    {"tau", &spec.tau},
                                                    {"rho", &spec.rho}};
  for (const auto& [key, target] : angles) {
    if (j.contains(key)) {
      *target = affine_from_json(j.at(key));
      any = true;
    }
  }
  if (!any) {
    throw std::invalid_argument(
        "circuit needs a catalog name or at least one affine angle");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "beta" && key != "chi" && key != "tau" && key != "rho") {
      throw std::invalid_argument("unknown circuit key: " + key);
    }
    (void)value;
  }
  return spec;
}

Json fock_to_json(const TwoModeFockState& state) {
  Json amps = Json::array();
  for (const auto& [idx, amp] : state.amplitudes()) {
    amps.push_back(Json::array({idx.first, idx.second, amp.real(), amp.imag()}));
  }
  return Json{{"cutoff", state.cutoff()}, {"amplitudes", amps}};
}

TwoModeFockState fock_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cutoff") || !j.contains("amplitudes")) {
    throw std::invalid_argument("fock state needs cutoff and amplitudes");
  }
  const int cutoff = j.at("cutoff").get<int>();
  AmplitudeMap amps;
  for (const auto& entry : j.at("amplitudes")) {
    if (!entry.is_array() || entry.size() != 4) {
      throw std::invalid_argument("amplitude entries must be [m, n, re, im]");
    }
    const int m = entry[0].get<int>();
    const int n = entry[1].get<int>();
    amps[{m, n}] += std::complex<double>(entry[2].get<double>(),
                                         entry[3].get<double>());
  }
  return TwoModeFockState(std::move(amps), cutoff);
}

Json gaussian_to_json(const GaussianPureState& state) {
  return Json{
      {"r", Json::array({state.r_plus, state.r_minus})},
      {"u", Json::array({state.u.eta, state.u.chi, state.u.phi, state.u.theta})},
      {"alpha",
       Json::array({Json::array({state.alpha(0).real(), state.alpha(0).imag()}),
                    Json::array({state.alpha(1).real(), state.alpha(1).imag()})})}};
}

GaussianPureState gaussian_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r")) {
    throw std::invalid_argument("gaussian state needs at least the r pair");
  }
  const auto& r = j.at("r");
  if (!r.is_array() || r.size() != 2) {
    throw std::invalid_argument("r must be [r_plus, r_minus]");
  }
  UAngles u;
  if (j.contains("u")) {
    const auto& ju = j.at("u");
    if (!ju.is_array() || ju.size() != 4) {
      throw std::invalid_argument("u must be [eta, chi, phi, theta]");
    }
    u = {ju[0].get<double>(), ju[1].get<double>(), ju[2].get<double>(),
         ju[3].get<double>()};
  }
  Eigen::Vector2cd alpha = Eigen::Vector2cd::Zero();
  if (j.contains("alpha")) {
    const auto& ja = j.at("alpha");
    if (!ja.is_array() || ja.size() != 2) {
      throw std::invalid_argument("alpha must be [[re, im], [re, im]]");
    }
    for (int k = 0; k < 2; ++k) {
      const auto& c = ja[k];
      if (!c.is_array() || c.size() != 2) {
        throw std::invalid_argument("alpha entries must be [re, im]");
      }
      alpha(k) = std::complex<double>(c[0].get<double>(), c[1].get<double>());
    }
  }
  return GaussianPureState(r[0].get<double>(), r[1].get<double>(), u, alpha);
}

}  // namespace bimetro
