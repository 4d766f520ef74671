#pragma once

// Coefficient-ring instances named on the command line.
//
//   F4                 finite field with 4 elements
//   F2[x]/(x^2)        truncated polynomial algebra
//   F2[x]              F_2[x] with the default degree cap
//   {"kind": ...}      JSON descriptor (finite_field, quotient, bounded_poly)

#include <string>
#include <variant>

#include "wittlab/coeff_ring.hpp"

namespace wittlab {

using Instance = std::variant<FiniteField, QuotientAlgebra, BoundedPoly>;

Instance parse_instance(const std::string& arg);
Instance parse_instance(const nlohmann::json& descriptor);

std::string describe(const Instance& inst);

}  // namespace wittlab
