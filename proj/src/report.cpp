#include "critline/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace critline::report {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const json& v) {
    switch (v.type()) {
        case json::value_t::boolean: return v.get<bool>() ? "1" : "0";
        case json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
        case json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
        case json::value_t::number_float: return format_number(v.get<double>());
        case json::value_t::null: return "";
        case json::value_t::string: {
            const auto s = v.get<std::string>();
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char c : s) {
                if (c == '"') out += '"';
                out += c;
            }
            return out + "\"";
        }
        default: {
            // Arrays (shift tuples) are written space separated.
            std::string out;
            for (const auto& e : v) {
                if (!out.empty()) out += ' ';
                out += csv_cell(e);
            }
            return out;
        }
    }
}

}  // namespace

std::uint64_t Report::failures() const {
    std::uint64_t f = row_failures;
    for (const auto& c : checks)
        if (!c.pass) ++f;
    return f;
}

void Report::add_row(json row, bool store) {
    if (row.size() != columns.size()) throw std::logic_error("Report::add_row: row width differs from header");
    ++cases;
    // Rows with a null slack (structural checks) stay out of the max ratio.
    bool slack_null = false;
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == "slack" && row[i].is_null()) slack_null = true;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == "pass" && row[i].is_boolean() && !row[i].get<bool>()) {
            ++row_failures;
            store = true;  // failing rows are always kept
        }
        if (columns[i] == "ratio" && row[i].is_number() && !slack_null) {
            const double r = row[i].get<double>();
            if (std::isfinite(r)) max_ratio = std::max(max_ratio, r);
        }
    }
    if (store) rows.push_back(std::move(row));
}

std::string Report::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
    }
    return os.str();
}

json Report::to_json() const {
    json j;
    j["schema"] = kReportSchema;
    j["suite"] = suite;
    j["seed"] = seed;
    j["grid"] = grid;
    j["columns"] = columns;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
        j["rows"].push_back(std::move(o));
    }
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["summary"] = {{"cases", cases},          {"row_failures", row_failures}, {"failures", failures()},
                    {"max_ratio", max_ratio},  {"exhausted", exhausted},       {"exhausted_what", exhausted_what},
                    {"stored_rows", rows.size()}};
    j["manifest"] = manifest;
    return j;
}

void Report::write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "report.csv", std::ios::binary);
        f << to_csv();
        if (!f) throw std::runtime_error("cannot write " + (dir / "report.csv").string());
    }
    std::ofstream f(dir / "report.json", std::ios::binary);
    f << to_json().dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + (dir / "report.json").string());
}

json Manifest::to_json() const {
    json j;
    j["schema"] = kManifestSchema;
    j["seed"] = seed;
    j["constants"] = {{"c0", slack.c0},
                      {"divisor_power", slack.divisor_power},
                      {"epsilon", slack.epsilon},
                      {"c_osc", slack.c_osc},
                      {"c_fourier", slack.c_fourier},
                      {"c_log", slack.c_log},
                      {"trend_tolerance", slack.trend_tolerance}};
    j["observed"] = observed;
    return j;
}

Manifest Manifest::from_json(const json& j) {
    if (j.value("schema", std::string()) != kManifestSchema)
        throw std::invalid_argument("manifest: unknown schema");
    Manifest m;
    m.seed = j.value("seed", std::uint64_t{0});
    const auto& c = j.at("constants");
    m.slack.c0 = c.value("c0", m.slack.c0);
    m.slack.divisor_power = c.value("divisor_power", m.slack.divisor_power);
    m.slack.epsilon = c.value("epsilon", m.slack.epsilon);
    m.slack.c_osc = c.value("c_osc", m.slack.c_osc);
    m.slack.c_fourier = c.value("c_fourier", m.slack.c_fourier);
    m.slack.c_log = c.value("c_log", m.slack.c_log);
    m.slack.trend_tolerance = c.value("trend_tolerance", m.slack.trend_tolerance);
    if (j.contains("observed")) m.observed = j.at("observed").get<std::map<std::string, double>>();
    return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("manifest: cannot open " + path.string());
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("manifest: " + std::string(e.what()));
    }
    return from_json(j);
}

void Manifest::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << to_json().dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace critline::report
