#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heis::cli {

/// Bad or missing parameters; the command line tool exits with status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { json, csv };

struct ExperimentConfig {
    std::string command;
    std::map<std::string, std::string> parameters; ///< flag name without dashes -> raw value
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> output_path;
};

const std::vector<std::string>& command_names();

/// Parses `heis <command> [--flag value ...]`. Throws ConfigError.
ExperimentConfig parse_command_line(int argc, const char* const* argv);

/// Runs one experiment, writing the artifact to config.output_path or `out`.
/// Returns 0 when every assertion passes and 1 otherwise. Throws ConfigError.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run, mapping errors to exit status 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace heis::cli
