#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "asymm/groups.hpp"

namespace asymm::cli {

// Exit codes: 0 success, 1 numerical failure (failed reproduction, covariance
// beyond tolerance, inconsistent value), 2 usage or validation errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

// Parses a group/representation token: z_n:N (cyclic character rep on
// {0..N-1}), regular:N (left regular rep of Z_N), u1:n0,n1,... (number
// spectrum), su2:j (spin j), su2_trivial:d (trivial SU(2) rep on d levels),
// file:path (finite group JSON, left regular rep), tensor:A*B(*C...).
Representation parse_group_spec(const std::string& spec);

// Parses an element token for the given representation: finite index, U(1)
// angle, or SU(2) "x|y|z:theta" / "nx,ny,nz:theta".
GroupElement parse_element_spec(const Representation& r, const std::string& spec);

// Entry point used by the binary and the tests; argv-style arguments without
// the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace asymm::cli
