#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "critline/critical_line.hpp"
#include "critline/quadrature.hpp"
#include "critline/suites.hpp"

namespace cs = critline::suites;
namespace rp = critline::report;

int main(int argc, char** argv) {
    CLI::App app{"critline: verification suites for short twisted character sums"};
    std::string suite;
    std::vector<std::string> grids;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out = "out";
    std::string manifest_path;
    bool permissive = false, list = false, failures_only = false;
    app.add_option("--suite", suite, "suite id (see --list)");
    app.add_option("--grid", grids, "grid override key=range[,key=range...], e.g. q=13,29,t=30..120:90");
    app.add_option("--seed", seed, "seed for sampled grids");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "directory for report.csv and report.json");
    app.add_option("--manifest", manifest_path, "calibration manifest to read (calibrate: to write)");
    app.add_flag("--permissive", permissive, "allow configurations outside the hypotheses");
    app.add_flag("--failures-only", failures_only, "store only failing rows");
    app.add_flag("--list", list, "print the suites and their statements");

    app.fallthrough();
    auto* cal = app.add_subcommand("calibrate", "run reduced grids and write manifest.json");
    auto* lval = app.add_subcommand("lvalue", "evaluate L(1/2 + it, chi)");
    std::uint64_t lq = 4, lindex = 1;
    double lt = 0.0, lacc = 1e-10;
    lval->add_option("--q", lq, "modulus")->required();
    lval->add_option("--index", lindex, "character index")->required();
    lval->add_option("--t", lt, "height");
    lval->add_option("--accuracy", lacc, "absolute accuracy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? 0 : (code == 0 ? 0 : cs::kExitConfig);
    }

    try {
        if (list) {
            for (const auto& s : cs::suite_list()) {
                std::cout << s.id << "\n    " << s.statement << "\n    defaults:";
                for (const auto& [k, v] : s.defaults) {
                    std::cout << ' ' << k << '=';
                    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << rp::format_number(v[i]);
                }
                std::cout << '\n';
            }
            return cs::kExitPass;
        }
        if (*cal) {
            const auto m = cs::calibrate(seed, jobs);
            const std::filesystem::path path = manifest_path.empty() ? std::filesystem::path(out) / "manifest.json"
                                                                     : std::filesystem::path(manifest_path);
            m.save(path);
            std::cout << "wrote " << path.string() << '\n';
            return cs::kExitPass;
        }
        if (*lval) {
            critline::arith::CharacterGroup g(lq);
            if (lindex >= g.size()) throw cs::ConfigError("character index out of range");
            const auto v = critline::lfunc::l_critical_line(g.character(lindex), lt, lacc);
            std::cout << rp::format_number(v.value.real()) << ' ' << rp::format_number(v.value.imag())
                      << " error " << rp::format_number(v.error_estimate) << " cutoff " << v.cutoff << '\n';
            return cs::kExitPass;
        }
        if (suite.empty()) throw cs::ConfigError("--suite is required (see --list)");
        cs::SuiteConfig cfg;
        cfg.suite = suite;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.permissive = permissive;
        cfg.failures_only = failures_only;
        for (const auto& g : grids) cs::parse_grid(g, cfg.grid);
        const rp::Manifest manifest = manifest_path.empty() ? rp::Manifest{} : rp::Manifest::load(manifest_path);
        const auto start = std::chrono::steady_clock::now();
        const auto report = cs::run_suite(cfg, manifest);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.write(out);
        std::fprintf(stderr, "%s: %llu cases, %llu failures, max ratio %s, %.2f s%s\n", report.suite.c_str(),
                     static_cast<unsigned long long>(report.cases), static_cast<unsigned long long>(report.failures()),
                     rp::format_number(report.max_ratio).c_str(), secs,
                     report.exhausted ? ", resource exhausted" : "");
        for (const auto& c : report.checks)
            if (!c.pass) std::fprintf(stderr, "  FAIL %s: %s\n", c.name.c_str(), c.detail.c_str());
        return cs::exit_code(report);
    } catch (const cs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cs::kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cs::kExitConfig;
    } catch (const critline::quad::ResourceExhausted& e) {
        std::cerr << "resource exhausted: " << e.what() << '\n';
        return cs::kExitExhausted;
    } catch (const critline::lfunc::TermBudgetExceeded& e) {
        std::cerr << "resource exhausted: " << e.what() << '\n';
        return cs::kExitExhausted;
    }
}
