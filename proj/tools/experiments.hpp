#pragma once

// Experiment registry behind the semigroup-lab command line: parameter
// schemas, configuration resolution, the experiments themselves and the
// on-disk layout of their outputs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sglab/csv.hpp"
#include "sglab/report.hpp"

namespace sglab::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kConfigError = 2, kNumericalError = 3 };

struct ParamSpec {
  enum class Kind { Number, Integer, Text };

  std::string key;
  std::string default_value;
  Kind kind = Kind::Number;
  std::string help;
};

const std::vector<std::string>& subcommands();
/// Keys accepted by a subcommand; `seed` and `out` are accepted everywhere.
const std::vector<ParamSpec>& schema(const std::string& subcommand);

/// Resolved, validated key/value parameters.
class Params {
 public:
  Params(std::string subcommand, std::map<std::string, std::string> values);

  const std::string& subcommand() const { return subcommand_; }
  const std::map<std::string, std::string>& values() const { return values_; }
  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::uint64_t seed() const;
  Params with(const std::string& key, const std::string& value) const;

 private:
  std::string subcommand_;
  std::map<std::string, std::string> values_;
};

struct RunConfig {
  std::string subcommand;
  /// Values given on the command line (highest precedence).
  std::map<std::string, std::string> overrides;
  std::optional<std::filesystem::path> config_file;
  /// KEY=v1,v2,...
  std::optional<std::string> sweep;
};

/// key = value lines; '#' starts a comment. Keys may use '-' or '_'.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// CLI > file > default, unknown keys rejected, numbers validated.
Params resolve(const RunConfig& config);

/// Output directory: the `out` parameter, else $SEMIGROUP_LAB_OUT, else ./semigroup-lab-out.
std::filesystem::path output_dir(const Params& params);

struct RunResult {
  std::vector<VerificationReport> reports;
  /// Relative path -> table.
  std::vector<std::pair<std::string, CsvTable>> tables;

  bool pass() const;
};

/// Runs one experiment without touching the file system.
RunResult execute(const Params& params);

/// Writes report.json, reports/*.json and the tables under `dir`.
void write_outputs(const Params& params, const RunResult& result, const std::filesystem::path& dir);

/// Resolves, runs (or sweeps), writes outputs and maps the outcome to an exit code.
int run(const RunConfig& config);

}  // namespace sglab::cli
