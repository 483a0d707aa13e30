#pragma once

#include <map>
#include <string>

#include "psifrac/solver.hpp"

namespace psifrac {

/// Flat "key = value" text; '#' starts a comment, values may be double-quoted.
/// Throws ParseError on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// rhs from the registry spelling: "zero", "constant:C", "linear_u:LAMBDA", or
/// an expression in x, y, u, u1, u2. Sets `lipschitz` for the named families;
/// expressions leave it untouched (the caller supplies it).
/// Returns true when the Lipschitz constant was derived.
bool make_rhs(const std::string& spec, Rhs& rhs, double& lipschitz);

struct ProblemConfig {
    ProblemSpec spec;
    BieleckiParams bp;
    std::string f_spec;
    std::string psi_spec;
    std::map<std::string, std::string> raw;
};

/// Builds a problem from parsed keys. Relative file references are resolved
/// against base_dir. Throws ParseError / DomainError / IoError.
ProblemConfig problem_from_keys(const std::map<std::string, std::string>& kv, const std::string& base_dir = ".");
ProblemConfig load_problem_config(const std::string& path);

/// Parse a double, rejecting trailing junk. Throws ParseError naming `what`.
double parse_double(const std::string& s, const std::string& what);
long parse_int(const std::string& s, const std::string& what);

}  // namespace psifrac
