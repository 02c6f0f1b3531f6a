#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace approx {

struct CliConfig {
  std::string command;  // compile, check, axioms
  std::vector<std::string> inputs;
  std::map<std::string, std::uint64_t> perforate;
  bool subst_sin = false;
  int trials = 1000;
  std::uint64_t seed = 42;
  int precision_bits = 128;
  std::uint64_t fuel = 1'000'000;
  std::string emit = "all";  // approx, err, derivation, all
  std::string out = ".";
  bool json = false;
};

/// Parses "L0=2" into the perforation map; false on malformed input.
bool parse_perforate(const std::string& spec, std::map<std::string, std::uint64_t>& out);

/// Exit code 0 all pass, 1 failures, 2 configuration or IO errors.
int run_cli(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace approx
