#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "satolab/characters.hpp"
#include "satolab/root_system.hpp"

namespace satolab::cli {

/// One experiment: a subcommand, its parameters and where the result goes.
/// Parameter values are kept as canonical strings so that the spec
/// round-trips through JSON and through its reproduction line unchanged.
struct ExperimentSpec {
  std::string subcommand;
  std::string group;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  std::string out = "-";        // "-" is stdout
  int threads = 1;              // never changes results, so not serialized

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct ParamSpec {
  std::string name;
  std::string default_value;  // empty: required (or optional when `optional`)
  std::string help;
  bool optional = false;
};

struct SubcommandSpec {
  std::string name;
  std::string help;
  bool needs_group = true;
  std::vector<ParamSpec> params;
};

const std::vector<SubcommandSpec>& subcommands();
const SubcommandSpec& subcommand(std::string_view name);

std::string to_json(const ExperimentSpec& spec);
/// Throws ValidationError naming the offending field.
ExperimentSpec from_json(std::string_view text);

/// Checks names, fills defaults. Throws ValidationError with a field path.
ExperimentSpec canonicalize(const ExperimentSpec& spec);

/// Command line that regenerates the artifact (output path excluded).
std::string reproduction_line(const ExperimentSpec& canonical);

/// Weight literal: sums of terms like e1, 2e1, -e2, w1, 0, rho, short-fund,
/// long-fund. `field` names the input in error messages.
Weight parse_weight(const RootSystem& rs, std::string_view text, std::string_view field);
/// Comma-separated weight literals.
std::vector<Weight> parse_weight_list(const RootSystem& rs, std::string_view text, std::string_view field);
/// Test-function literal: terms separated by ';', each "[coeff:]weight",
/// e.g. "e1" or "0.6:e1+e2;0.8:2e1".
CharExpansion parse_expansion(const RootSystem& rs, std::string_view text, std::string_view field);

/// Runs a canonical spec and returns the artifact text.
std::string render(const ExperimentSpec& canonical);

/// Writes text to path through a temporary file and a rename; "-" writes
/// to stdout. Throws IoError.
void write_atomically(const std::string& path, const std::string& text);

/// canonicalize + render + write. Returns the artifact text.
std::string run(const ExperimentSpec& spec);

}  // namespace satolab::cli
