#pragma once

// Verification suites over parameter grids, and calibration of the slack
// constants.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "critline/report.hpp"

namespace critline::suites {

using Grid = std::map<std::string, std::vector<double>>;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SuiteInfo {
    std::string id;
    std::string statement;
    Grid defaults;
};

const std::vector<SuiteInfo>& suite_list();
const SuiteInfo& suite_info(const std::string& id);

/// "1..5", "1..9:2", "0.5", "10,20,40" and mixtures; throws ConfigError on an
/// empty or malformed range.
std::vector<double> parse_range(const std::string& text);
/// Adds `key=range,key=range` to `grid`; a comma-separated item without '='
/// extends the previous key.
void parse_grid(const std::string& text, Grid& grid);

struct SuiteConfig {
    std::string suite;
    Grid grid;  // overrides of the suite defaults
    std::uint64_t seed = 1;
    int jobs = 1;
    bool permissive = false;
    bool failures_only = false;  // keep only failing rows in the report
};

report::Report run_suite(const SuiteConfig& config, const report::Manifest& manifest);

/// 0 all pass, 2 verification failure, 4 resource exhaustion.
int exit_code(const report::Report& r);

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitExhausted = 4;

/// Reduced grids for every suite; each constant is set to the larger of its
/// default and twice the observed maximum of the matching normalized ratio.
report::Manifest calibrate(std::uint64_t seed = 1, int jobs = 1);

}  // namespace critline::suites
