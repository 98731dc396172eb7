#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "g2coh/errors.hpp"
#include "g2coh/sweep.hpp"

using namespace g2coh;

namespace {

using Args = std::vector<std::string>;

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(const Args& args) {
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::vector<double> column(const std::string& csv, int index) {
    std::vector<double> values;
    const auto lines = data_lines(csv);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string cell;
        for (int c = 0; c <= index; ++c) std::getline(row, cell, ',');
        values.push_back(std::stod(cell));
    }
    return values;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("g2coh_test_" + name);
}

}  // namespace

TEST_CASE("parse_config") {
    SUBCASE("thermal run") {
        const auto cfg = parse_config({"--nbar", "1", "--r", "0", "--alpha-mag", "0", "--tau-max", "5"});
        CHECK(cfg.state.nbar == 1.0);
        CHECK(cfg.state.xi.r() == 0.0);
        CHECK(cfg.tau_max == 5.0);
        CHECK(cfg.mode == RunMode::closed_form);
        CHECK(cfg.steps == 200);
        CHECK(cfg.oracle_dim == 120);
        CHECK(cfg.format == OutputFormat::csv);
        CHECK(cfg.output_path.empty());
    }
    SUBCASE("compare with a custom dimension") {
        const auto cfg = parse_config({"--nbar", "1", "--mode", "compare", "--oracle-dim", "60"});
        CHECK(cfg.mode == RunMode::compare);
        CHECK(cfg.oracle_dim == 60);
    }
    SUBCASE("usage errors") {
        CHECK_THROWS_AS(parse_config({"--steps", "0"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--nbar", "abc"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--bogus", "1"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--mode", "fast"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--tau-max", "0"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--t-gen", "-1"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--nbar", "-0.5"}), UsageError);
        CHECK_THROWS_AS(parse_config({"--mode", "oracle", "--oracle-dim", "1"}), UsageError);
        CHECK_NOTHROW(parse_config({"--oracle-dim", "1"}));
    }
    SUBCASE("config file with command-line override") {
        const auto path = temp_file("config.toml");
        {
            std::ofstream f(path);
            f << "nbar = 0.5\nr = 0.3\nalpha-mag = 1.0\ntau-max = 2.5\nsteps = 10\nmode = \"compare\"\n";
        }
        const auto cfg = parse_config({"--config", path.string(), "--steps", "20"});
        CHECK(cfg.state.nbar == 0.5);
        CHECK(cfg.state.xi.r() == 0.3);
        CHECK(cfg.state.alpha.magnitude() == 1.0);
        CHECK(cfg.tau_max == 2.5);
        CHECK(cfg.steps == 20);
        CHECK(cfg.mode == RunMode::compare);
        {
            std::ofstream f(path);
            f << "nbar = 0.5\nsqueeze = 0.3\n";
        }
        CHECK_THROWS_AS(parse_config({"--config", path.string()}), UsageError);
        std::filesystem::remove(path);
    }
}

TEST_CASE("run_sweep") {
    SUBCASE("row count and ordering") {
        const auto rows = run_sweep(parse_config({"--nbar", "1", "--tau-max", "2", "--steps", "8"}));
        REQUIRE(rows.size() == 9);
        CHECK(rows.front().tau == 0.0);
        CHECK(rows.back().tau == 2.0);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].tau > rows[i - 1].tau);
    }
    SUBCASE("thermal column") {
        for (const auto& row : run_sweep(parse_config({"--nbar", "1", "--tau-max", "5"}))) {
            CHECK(std::abs(row.g2 - 2.0) < 1e-12);
        }
    }
    SUBCASE("coherent column") {
        for (const auto& row : run_sweep(parse_config({"--alpha-mag", "1", "--tau-max", "5"}))) {
            CHECK(std::abs(row.g2 - 1.0) < 1e-12);
        }
    }
    SUBCASE("squeezed vacuum at tau = 0") {
        const auto rows = run_sweep(parse_config({"--r", "0.8", "--tau-max", "1"}));
        const double sh = std::sinh(0.8);
        CHECK(std::abs(rows.front().g2 - (3.0 + 1.0 / (sh * sh))) < 1e-12);
    }
    SUBCASE("oracle mode fills g2 from the Fock oracle") {
        const auto closed = run_sweep(parse_config({"--alpha-mag", "0.5", "--r", "0.3", "--nbar", "0.2", "--steps", "4"}));
        const auto oracle = run_sweep(
            parse_config({"--alpha-mag", "0.5", "--r", "0.3", "--nbar", "0.2", "--steps", "4", "--mode", "oracle"}));
        REQUIRE(closed.size() == oracle.size());
        for (std::size_t i = 0; i < closed.size(); ++i) {
            CHECK(oracle[i].g2 == doctest::Approx(closed[i].g2).epsilon(1e-8));
            CHECK(oracle[i].g2 != closed[i].g2);
        }
    }
    SUBCASE("vacuum is rejected before any row") {
        CHECK_THROWS_AS(run_sweep(parse_config({})), UndefinedCoherence);
    }
}

TEST_CASE("run_compare") {
    SUBCASE("acceptance-grid point") {
        const auto rep = run_compare(parse_config(
            {"--alpha-mag", "0.5", "--r", "0.3", "--nbar", "0.2", "--tau-max", "1.5", "--steps", "20", "--mode", "compare"}));
        CHECK(rep.max_rel_err < 1e-5);
        CHECK(rep.convergence.converged);
        CHECK(rep.passed());
    }
    SUBCASE("thermal point") {
        const auto rep = run_compare(parse_config({"--nbar", "1", "--mode", "compare", "--steps", "10"}));
        CHECK(rep.max_abs_err < 1e-6);
    }
    SUBCASE("strong squeezing with a small basis fails") {
        const auto rep = run_compare(
            parse_config({"--r", "2.5", "--mode", "compare", "--oracle-dim", "40", "--steps", "4"}));
        CHECK_FALSE(rep.convergence.converged);
        CHECK_FALSE(rep.passed());
    }
    CHECK_THROWS_AS(run_compare(parse_config({"--nbar", "1"})), UsageError);
}

TEST_CASE("CSV and JSON output") {
    const Args base{"--alpha-mag", "0.7", "--alpha-phase", "0.3", "--r", "0.4", "--theta", "1.0", "--nbar", "0.2",
                    "--tau-max", "2", "--steps", "25"};
    SUBCASE("schema and determinism") {
        const auto first = run(base);
        const auto second = run(base);
        CHECK(first.status == exit_code::ok);
        CHECK(first.out == second.out);
        const auto lines = data_lines(first.out);
        REQUIRE(lines.size() == 27);
        CHECK(lines[0] == "tau,r_tau,mean_n,n_tau,s_tau,g2");
        CHECK(first.out.rfind("# ", 0) == 0);
        CHECK(first.out.find("# b=(") != std::string::npos);
        // 17 significant digits round-trip every value
        const auto g2s = column(first.out, 5);
        const auto rows = run_sweep(parse_config(base));
        for (std::size_t i = 0; i < rows.size(); ++i) CHECK(g2s[i] == rows[i].g2);
    }
    SUBCASE("compare columns") {
        Args args = base;
        args[11] = "1";  // --tau-max
        args.back() = "5";
        args.insert(args.end(), {"--mode", "compare"});
        const auto res = run(args);
        REQUIRE(res.status == exit_code::ok);
        CHECK(data_lines(res.out)[0] == "tau,r_tau,mean_n,n_tau,s_tau,g2,g2_oracle,abs_err");
        CHECK(res.out.find("# compare max_abs_err=") != std::string::npos);
    }
    SUBCASE("json mirrors the csv columns") {
        Args args = base;
        args.insert(args.end(), {"--format", "json"});
        const auto res = run(args);
        REQUIRE(res.status == exit_code::ok);
        const auto doc = nlohmann::json::parse(res.out);
        CHECK(doc["rows"].size() == 26);
        CHECK(doc["rows"][3].contains("s_tau"));
        CHECK(doc["metadata"]["config"]["steps"] == 25);
        CHECK(doc["metadata"].contains("b"));
        const auto rows = run_sweep(parse_config(base));
        CHECK(doc["rows"][3]["g2"].get<double>() == rows[3].g2);
    }
    SUBCASE("output file") {
        const auto path = temp_file("out.csv");
        Args args = base;
        args.insert(args.end(), {"--output", path.string()});
        const auto res = run(args);
        CHECK(res.status == exit_code::ok);
        CHECK(res.out.empty());
        std::ifstream f(path);
        std::stringstream content;
        content << f.rdbuf();
        CHECK(content.str() == run(base).out);
        std::filesystem::remove(path);
    }
}

TEST_CASE("exit-status contract") {
    CHECK(run({"--help"}).status == exit_code::ok);
    CHECK(run({"--steps", "0", "--nbar", "1"}).status == exit_code::usage);
    CHECK(run({"--nbar", "x"}).status == exit_code::usage);
    CHECK(run({"--unknown"}).status == exit_code::usage);
    const auto vac = run({"--tau-max", "1"});
    CHECK(vac.status == exit_code::undefined_coherence);
    CHECK(vac.out.empty());
    CHECK(run({"--r", "2.5", "--mode", "compare", "--oracle-dim", "40", "--steps", "4"}).status ==
          exit_code::comparison_failed);
}

TEST_CASE("installed binary honours the exit-status contract") {
    const std::string exe = G2SWEEP_EXE;
    const auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status("--nbar 1 --steps 3") == 0);
    CHECK(status("--steps 0") == 1);
    CHECK(status("--tau-max 1") == 2);
    CHECK(status("--r 2.5 --mode compare --oracle-dim 40 --steps 2") == 3);
}
