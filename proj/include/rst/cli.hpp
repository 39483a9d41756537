#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rst/graph.hpp"

namespace rst {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;       // bad flags or unparsable input
inline constexpr int kValidation = 3;  // input parsed but violates an invariant
inline constexpr int kSolver = 4;
inline constexpr int kStatistical = 5;
}  // namespace exit_code

/// Runs one command line (args excludes the program name). Input defaults to
/// `in`, trees and reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Trees as written by `sample`: blocks of "u v" label lines separated by
/// blank lines. Throws GraphError(Parse) on malformed lines or unknown labels.
std::vector<std::vector<Edge>> read_trees(std::istream& in, const Graph& g);

}  // namespace rst
