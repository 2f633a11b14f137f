#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "refloor/enumerate.hpp"

namespace refloor {

/// Parses "d,a1,...,an".
CurveClass parse_class_spec(const std::string& text);

/// Parses a comma-separated list of positive integers; "" gives {}.
std::vector<int> parse_int_list(const std::string& text);

/// Runs the command line `args` (without the program name). Returns 0 on
/// success and 2 on usage or validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refloor
