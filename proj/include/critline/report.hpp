#pragma once

// Verification reports (CSV + JSON) and the calibration manifest.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "critline/slack.hpp"

namespace critline::report {

using nlohmann::json;

inline constexpr const char* kReportSchema = "critline-report/1";
inline constexpr const char* kManifestSchema = "critline-manifest/1";

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<std::string> columns;
    std::vector<json> rows;  // arrays aligned with columns
    std::vector<Check> checks;
    json grid = json::object();
    json manifest = json::object();
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;          // rows evaluated, stored or not
    std::uint64_t row_failures = 0;   // cases with pass = false
    double max_ratio = 0.0;
    bool exhausted = false;
    std::string exhausted_what;

    std::uint64_t failures() const;
    bool pass() const { return failures() == 0 && !exhausted; }

    /// Appends a row; `pass` and `ratio` columns, when present, feed the summary
    /// (ratio only when the row has no null `slack`).
    void add_row(json row, bool store = true);

    std::string to_csv() const;
    json to_json() const;
    void write(const std::filesystem::path& dir) const;
};

/// Shortest round-trip decimal form; integers print without a fraction.
std::string format_number(double x);

struct Manifest {
    SlackPolicy slack;
    std::map<std::string, double> observed;  // per constant: max normalized ratio seen by calibration
    std::uint64_t seed = 0;

    json to_json() const;
    static Manifest from_json(const json& j);
    static Manifest load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

}  // namespace critline::report
