#pragma once

#include <string>
#include <string_view>

#include "bimetro/fock.hpp"

namespace bimetro {

// Parses the CLI probe-state mini-language "name:arg,key=val,..." into a Fock
// state (expressed in the generator's normal-mode basis).  Supported names:
//   noon:N[,phase=x]
//   quasi-noon:n=..,var=..[,phase=..][,rounded]
//   poisson-cat:n=..,var=..[,dphi=..][,phi0=..][,dphit=..][,phit0=..][,cutoff=..]
//   squeezed-vacuum:r=..[,cutoff=..]        (cutoff defaults to loss <= 1e-10)
//   coherent:re=..[,im=..][,re2=..][,im2=..][,cutoff=..]
//   fock:m,n
// Unknown names or keys raise std::invalid_argument; domain violations raise
// the corresponding library error.
TwoModeFockState parse_state(std::string_view text);

}  // namespace bimetro
