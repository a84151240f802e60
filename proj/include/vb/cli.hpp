#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vb::cli {

enum class Format { Plain, Json, Csv };

/// Malformed flags, unknown keys, unparsable values.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One invocation. `target` is the sub-kind for verify and table.
struct JobConfig {
    std::string command;
    std::string target;
    std::map<std::string, std::string> params;
    Format format = Format::Plain;
    std::optional<std::string> output_path;
    bool check_oracle = false;
    int threads = 1;  // not part of the report
};

/// Structured result of one job, independent of output format.
struct Report {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json outputs = nlohmann::json::object();
    std::optional<bool> pass;
    std::optional<std::string> witness;
    std::optional<std::string> status;  // "excluded" for out-of-hypothesis inputs
    std::vector<std::string> columns;   // tables only
    std::vector<std::vector<std::string>> rows;
};

struct RunResult {
    int exit_status = 0;
    std::string output;  // rendered report, empty on error
    std::string error;
};

inline constexpr const char* kSchema = "vb-1";

// Flat `key = value` lines; `#` starts a comment. Keys mirror the long flags.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Flags override config file values. Throws UsageError.
JobConfig parse_args(const std::vector<std::string>& args);

std::string usage();

/// Runs the job. Throws PreconditionError / OutOfScopeError / UsageError.
Report execute(const JobConfig& config);

nlohmann::json to_json(const Report& report);
std::string render(const Report& report, Format format);

// 1 for an excluded report, 2 for a failed claim, else 0.
int exit_status_for(const Report& report);

/// execute + render + exit status: 0 pass, 1 usage/precondition, 2 falsified.
RunResult run(const JobConfig& config);

// Full entry point used by the executable.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vb::cli
