#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gzb::harness {

// Entry point behind tools/gzb. Exit codes: 0 ok, 1 failure, 2 parse/usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gzb::harness
