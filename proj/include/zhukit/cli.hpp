#pragma once

// Command-line surface: verbs over every module with JSON or CSV reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 cutoff or precondition error.

#include <iosfwd>
#include <string>
#include <vector>

#include "zhukit/fock.hpp"
#include "zhukit/laurent.hpp"

namespace zhukit {

enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_usage = 2, exit_precondition = 3 };

/// Runs one command; args excludes the program name. Reports go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a Fock-space vector written as terms "c*[n1,n2,...]" joined by
/// '+', with c an optional "num/den" and [] the vacuum; "vacuum" and "h" are
/// accepted as shorthands. Throws std::invalid_argument on malformed text.
FockVector parse_fock(const std::string& text);

/// [[exponent, "num/den"], ...] in ascending exponent order.
std::string laurent_to_json(const LaurentPoly& p);
/// Inverse of laurent_to_json; throws std::invalid_argument on bad input.
LaurentPoly laurent_from_json(const std::string& text);

/// [[[n1, n2, ...], "num/den"], ...] in basis order.
std::string fock_to_json(const FockVector& v);

}  // namespace zhukit
