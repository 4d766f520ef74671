#pragma once

// Named rings and extensions used by the verification suites and the CLI.
//
//   Z2, Z3        p-adic integers
//   Z2[pi]        Z_2[pi]/(pi^2 - 2)
//   W(F4)         unramified of degree 2 over Z_2, omega^2 + omega + 1 = 0
//   W(F4)[pi]     W(F4)[pi]/(pi^2 - 2)
//
//   unram-r2      Z2 -> W(F4)
//   ram-e2        Z2 -> Z2[pi], pi_base = 2 = varpi^2
//   tower-upper   W(F4) -> W(F4)[pi]
//   composite     Z2 -> W(F4)[pi]

#include <string>
#include <vector>

#include "wittlab/extension.hpp"

namespace wittlab {

SpecPtr named_spec(const std::string& name);
ExtPtr named_ext(const std::string& name);
std::vector<std::string> spec_names();
std::vector<std::string> ext_names();

/// A spec from a file path, inline JSON text or a catalog name.
SpecPtr load_spec(const std::string& arg);
ExtPtr load_ext(const std::string& arg);

}  // namespace wittlab
