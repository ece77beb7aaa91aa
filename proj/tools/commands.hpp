#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "workspace.hpp"

namespace relproj::cli {

using ojson = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::string format = "text";
};

/// Result of one subcommand: the individual verdicts plus command-specific data.
struct Report {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<CheckReport> checks;
  std::vector<std::string> warnings;
  ojson data = ojson::object();
  double elapsed_ms = 0;  // text output only; JSON stays byte-deterministic

  bool passed() const;
  void add(CheckReport c) { checks.push_back(std::move(c)); }
};

ojson report_json(const Report& r);
std::string report_text(const Report& r);

/// Runs `command` (and `sub` for proj) on an input definition.
Report dispatch(const std::string& command, const std::string& sub, Workspace& ws, const json& input, const Options& opt);

Report octonion_suite(const Options& opt);
Report builtin_suite(const Options& opt);
Report transition_command(const AlgebraPtr& A, std::size_t n, std::size_t from, std::size_t to,
                          const std::vector<Vec>& coords);

/// Full command line. Exit codes: 0 all checks pass, 1 a violation was found, 2 input or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relproj::cli
