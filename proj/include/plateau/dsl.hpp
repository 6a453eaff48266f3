#pragma once

// Construction specs, one line each:
//   monomial p=2 n=6 d=3 [modulus=1,1,0,0,0,0,1]
//   gold-trace n=6 r=1
//   mm1 m=2 pi=@pi.tt phi=@phi.tt
//   mm2 m=2 i=1 pi=@pi.tt
//   compose L=@mat.txt F=@f.tt
// '@file' reads a function (or matrix) file; tables may also be given inline
// as comma-separated values, matrices as rows separated by ';'.

#include <string>
#include <string_view>

#include "plateau/constructions.hpp"

namespace plateau {

/// Throws std::invalid_argument on malformed specs and HypothesisError when a
/// hypothesis fails without `force`. Relative '@' paths resolve against `base_dir`.
Construction build_construction(std::string_view spec, bool force = false, const std::string& base_dir = "");

}  // namespace plateau
