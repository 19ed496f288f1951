#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bai_cli {

/// Entry point of the `bai` tool. Returns 0 on success and 2 on any
/// usage, config or domain error (one diagnostic line on `err`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a,b,c" or "start:stop:step" (stop included when reached).
std::vector<double> parse_real_grid(const std::string& text);
std::vector<std::uint64_t> parse_budget_grid(const std::string& text);

}  // namespace bai_cli
