/// @file runner.hpp
/// @brief Configuration ingestion and report emission for the CLI: flat
///        key-value config files with section headers, atomic output files,
///        deterministic run orchestration.

#pragma once

#include <string>
#include <vector>

#include "odfrac/verify.hpp"

namespace odfrac {

struct RunConfig {
    std::string out_dir;  ///< flag > config > ODFRAC_OUT_DIR env > "reports"
    bool write_json = true;
    bool write_csv = true;
    bool stamped = true;  ///< append _<timestamp> to report file names
    unsigned seed = 12345;
    std::vector<std::string> suites;  ///< empty = all
    std::vector<std::pair<std::string, SuiteConfig>> overrides;

    /// Suite config: defaults + any [suite <name>] section overrides.
    SuiteConfig suite_config(const std::string& name) const;
};

/// Parses the line-oriented config: `[global]` / `[suite <name>]` sections,
/// `key = value` entries, `#` comments. Throws std::runtime_error with the
/// offending line on malformed input or unknown keys.
RunConfig parse_run_config(const std::string& path);

RunConfig default_run_config();

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

struct SuiteOutcome {
    std::string suite;
    bool pass = false;
    std::string json_path;
    std::string csv_path;
};

/// Runs the selected suites, writes reports, returns outcomes in order.
std::vector<SuiteOutcome> run_verification(const RunConfig& cfg,
                                           const std::vector<std::string>& which);

}  // namespace odfrac
