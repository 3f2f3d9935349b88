#pragma once

#include <string>

#include <json.hpp>

#include "bimetro/circuit.hpp"
#include "bimetro/fock.hpp"
#include "bimetro/gaussian.hpp"

namespace bimetro {

using Json = nlohmann::json;

// Circuit: {"catalog": "mach_zehnder"} or the four affine angle pairs
// {"beta": [offset, slope], "chi": ..., "tau": ..., "rho": ...} (missing
// angles default to zero).
Json circuit_to_json(const CircuitSpec& spec);
CircuitSpec circuit_from_json(const Json& j);

// Fock state: {"cutoff": c, "amplitudes": [[m, n, re, im], ...]}.
Json fock_to_json(const TwoModeFockState& state);
TwoModeFockState fock_from_json(const Json& j);

// Gaussian state: {"r": [r+, r-], "u": [eta, chi, phi, theta],
//                  "alpha": [[re, im], [re, im]]}.
Json gaussian_to_json(const GaussianPureState& state);
GaussianPureState gaussian_from_json(const Json& j);

}  // namespace bimetro
