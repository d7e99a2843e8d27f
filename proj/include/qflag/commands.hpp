#ifndef QFLAG_COMMANDS_HPP
#define QFLAG_COMMANDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflag/json_io.hpp"

/// The subcommands of the qflag executable, as functions returning text and an exit code.
namespace qflag::cli {

using io::json;

enum ExitCode : int { kPass = 0, kUsage = 1, kFailure = 2 };

/// Settings from --config. Keys: "seed", "output_path", "tolerances" (a map of known names).
struct Config {
  std::map<std::string, double> tolerances;
  std::optional<std::uint64_t> seed;
  std::string output_path;
};

/// Tolerance names accepted in a config file, with their defaults.
const std::map<std::string, double>& default_tolerances();

/// Throws ParseError on unknown keys, unknown tolerance names or wrong types.
Config config_from_json(const json& j);
double tolerance(const Config& cfg, const std::string& name);

/// Seed precedence: explicit flag, then config, then QFLAG_SEED, then 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const Config& cfg);

struct CommandResult {
  int exit_code = kPass;
  std::string output;  ///< stdout payload
  std::string error;   ///< message for stderr
};

CommandResult cmd_decompose(const std::string& kind, const json& input);
CommandResult cmd_ddet(const json& input);
CommandResult cmd_dress(const json& g, const json& k);

inline const std::vector<std::string> kSuites = {"schouten", "lambda", "spheroid",
                                                 "hp1",      "leaves", "dressing"};
CommandResult cmd_verify(const std::string& suite, int n, std::uint64_t seed, const Config& cfg);

struct ProfileArgs {
  double rho_min = 0.1;
  double rho_max = 3.0;
  int steps = 30;
  int directions = 1;
  std::uint64_t seed = 1;
};

/// CSV with columns rho, direction_seed, coeff_bruhat, coeff_invariant, ratio, expected_ratio,
/// abs_err; rows ordered by rho, then direction seed. Direction d uses seed + d.
CommandResult cmd_profile(const ProfileArgs& args);

/// Parses a word such as "1 2 1" or "1,2,1".
std::vector<int> parse_word(const std::string& text);
CommandResult cmd_leaf(const std::vector<int>& word, int n, std::uint64_t seed);

}  // namespace qflag::cli

#endif  // QFLAG_COMMANDS_HPP
