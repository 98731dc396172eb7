#include "g2coh/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "g2coh/errors.hpp"
#include "g2coh/param_map.hpp"

namespace g2coh {

namespace {

struct RawOptions {
    double nbar = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double alpha_mag = 0.0;
    double alpha_phase = 0.0;
    double t_gen = 1.0;
    double tau_max = 1.0;
    int steps = 200;
    std::string mode = "closed_form";
    int oracle_dim = kDefaultOracleDim;
    std::string format = "csv";
    std::string output;
};

void configure(CLI::App& app, RawOptions& o) {
    app.set_config("--config", "", "flat key = value file; keys are the long flag names");
    app.allow_config_extras(false);
    app.add_option("--nbar", o.nbar, "mean thermal occupation of the initial state")->capture_default_str();
    app.add_option("--r", o.r, "squeeze magnitude r")->capture_default_str();
    app.add_option("--theta", o.theta, "squeeze phase theta (radians)")->capture_default_str();
    app.add_option("--alpha-mag", o.alpha_mag, "displacement magnitude |alpha|")->capture_default_str();
    app.add_option("--alpha-phase", o.alpha_phase, "displacement phase (radians)")->capture_default_str();
    app.add_option("--t-gen", o.t_gen, "time the amplifier takes to prepare the state")->capture_default_str();
    app.add_option("--tau-max", o.tau_max, "largest delay in the sweep")->capture_default_str();
    app.add_option("--steps", o.steps, "number of delay intervals (rows = steps + 1)")->capture_default_str();
    app.add_option("--mode", o.mode, "closed_form | oracle | compare")
        ->check(CLI::IsMember({"closed_form", "oracle", "compare"}))
        ->capture_default_str();
    app.add_option("--oracle-dim", o.oracle_dim, "Fock truncation used by oracle and compare")->capture_default_str();
    app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--output", o.output, "output file (default: standard output)");
}

RunConfig to_config(const RawOptions& o) {
    RunConfig cfg;
    try {
        cfg.state = GaussianStateParams(ComplexAmplitude::polar(o.alpha_mag, o.alpha_phase), SqueezeParam(o.r, o.theta),
                                        o.nbar);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    cfg.t_gen = o.t_gen;
    cfg.tau_max = o.tau_max;
    cfg.steps = o.steps;
    cfg.mode = o.mode == "oracle" ? RunMode::oracle : o.mode == "compare" ? RunMode::compare : RunMode::closed_form;
    cfg.oracle_dim = o.oracle_dim;
    cfg.format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.output_path = o.output;
    cfg.validate();
    return cfg;
}

std::vector<std::string> reversed(const std::vector<std::string>& args) {
    // CLI11 consumes a reversed argument vector
    return {args.rbegin(), args.rend()};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex(cplx v) {
    return "(" + fmt17(v.real()) + "," + fmt17(v.imag()) + ")";
}

nlohmann::json complex_json(cplx v) {
    return {{"re", v.real()}, {"im", v.imag()}};
}

}  // namespace

void RunConfig::validate() const {
    if (!(t_gen > 0.0) || !std::isfinite(t_gen)) throw UsageError("--t-gen must be > 0");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw UsageError("--tau-max must be > 0");
    if (steps < 1) throw UsageError("--steps must be >= 1");
    if (mode != RunMode::closed_form && oracle_dim < 2) throw UsageError("--oracle-dim must be >= 2");
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"g2sweep"};
    RawOptions raw;
    configure(app, raw);
    try {
        app.parse(reversed(args));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    return to_config(raw);
}

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::closed_form: return "closed_form";
        case RunMode::oracle: return "oracle";
        case RunMode::compare: return "compare";
    }
    return "?";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::json ? "json" : "csv";
}

std::vector<double> tau_grid(double tau_max, int steps) {
    std::vector<double> taus(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) taus[i] = tau_max * double(i) / double(steps);
    return taus;
}

SweepResult execute(const RunConfig& config) {
    config.validate();
    if (config.state.is_vacuum()) throw UndefinedCoherence();

    SweepResult result;
    result.params = hamiltonian_from_state(config.generation());
    const auto taus = tau_grid(config.tau_max, config.steps);

    result.rows.resize(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        result.rows[i].sample = coherence_sample(config.state, result.params, taus[i]);
    }
    if (config.mode == RunMode::closed_form) return result;

    const OracleEvaluator evaluator(config.state.alpha, config.state.xi, result.params, config.oracle_dim);
    const auto oracle = evaluator.evaluate(config.state.nbar, taus);
    if (config.mode == RunMode::oracle) {
        for (std::size_t i = 0; i < taus.size(); ++i) {
            result.rows[i].sample.mean_n = oracle[i].mean_n_tau;
            result.rows[i].sample.g2 = oracle[i].g2;
        }
        return result;
    }

    CompareReport report;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto& row = result.rows[i];
        const double closed = row.sample.g2;
        const double abs_err = std::abs(oracle[i].g2 - closed);
        row.g2_oracle = oracle[i].g2;
        row.abs_err = abs_err;
        report.max_abs_err = std::max(report.max_abs_err, abs_err);
        const double rel = abs_err / std::abs(closed);
        if (i == 0 || rel > report.max_rel_err) {
            report.max_rel_err = rel;
            report.worst_tau = taus[i];
        }
    }

    const OracleEvaluator doubled(config.state.alpha, config.state.xi, result.params, 2 * config.oracle_dim);
    const auto check = doubled.evaluate(config.state.nbar, taus);
    TruncationReport& conv = report.convergence;
    conv.dim = config.oracle_dim;
    conv.converged = true;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double change = std::abs(check[i].g2 - oracle[i].g2) / std::abs(oracle[i].g2);
        conv.tail_mass = std::max(conv.tail_mass, oracle[i].tail_mass);
        if (i == 0 || change > conv.rel_change) {
            conv.rel_change = change;
            conv.g2_at_dim = oracle[i].g2;
            conv.g2_at_double = check[i].g2;
        }
    }
    conv.converged = conv.rel_change < kRelChangeThreshold && conv.tail_mass < kTailThreshold;
    result.compare = report;
    return result;
}

std::vector<CoherenceSample> run_sweep(const RunConfig& config) {
    const SweepResult result = execute(config);
    std::vector<CoherenceSample> out;
    out.reserve(result.rows.size());
    for (const auto& row : result.rows) out.push_back(row.sample);
    return out;
}

CompareReport run_compare(const RunConfig& config) {
    if (config.mode != RunMode::compare) throw UsageError("run_compare requires --mode compare");
    return *execute(config).compare;
}

void write_csv(std::ostream& out, const RunConfig& config, const SweepResult& result) {
    const auto& s = config.state;
    out << "# g2sweep mode=" << to_string(config.mode) << " nbar=" << fmt17(s.nbar) << " r=" << fmt17(s.xi.r())
        << " theta=" << fmt17(s.xi.theta()) << " alpha=" << fmt_complex(s.alpha) << " t_gen=" << fmt17(config.t_gen)
        << " tau_max=" << fmt17(config.tau_max) << " steps=" << config.steps;
    if (config.mode != RunMode::closed_form) out << " oracle_dim=" << config.oracle_dim;
    out << "\n# b=" << fmt_complex(result.params.b) << " c=" << fmt_complex(result.params.c) << "\n";

    const bool compare = config.mode == RunMode::compare;
    out << "tau,r_tau,mean_n,n_tau,s_tau,g2" << (compare ? ",g2_oracle,abs_err" : "") << "\n";
    for (const auto& row : result.rows) {
        const auto& x = row.sample;
        out << fmt17(x.tau) << ',' << fmt17(x.r_tau) << ',' << fmt17(x.mean_n) << ',' << fmt17(x.n_tau) << ','
            << fmt17(x.s_tau) << ',' << fmt17(x.g2);
        if (compare) out << ',' << fmt17(row.g2_oracle.value_or(NAN)) << ',' << fmt17(row.abs_err.value_or(NAN));
        out << "\n";
    }
    if (result.compare) {
        const auto& c = *result.compare;
        out << "# compare max_abs_err=" << fmt17(c.max_abs_err) << " max_rel_err=" << fmt17(c.max_rel_err)
            << " worst_tau=" << fmt17(c.worst_tau) << " dim=" << c.convergence.dim
            << " tail_mass=" << fmt17(c.convergence.tail_mass) << " rel_change=" << fmt17(c.convergence.rel_change)
            << " converged=" << (c.convergence.converged ? "true" : "false")
            << " passed=" << (c.passed() ? "true" : "false") << "\n";
    }
}

void write_json(std::ostream& out, const RunConfig& config, const SweepResult& result) {
    using nlohmann::json;
    const auto& s = config.state;
    json meta = {
        {"b", complex_json(result.params.b)},
        {"c", complex_json(result.params.c)},
        {"config",
         {{"nbar", s.nbar},
          {"r", s.xi.r()},
          {"theta", s.xi.theta()},
          {"alpha-mag", s.alpha.magnitude()},
          {"alpha-phase", s.alpha.phase()},
          {"t-gen", config.t_gen},
          {"tau-max", config.tau_max},
          {"steps", config.steps},
          {"mode", to_string(config.mode)},
          {"oracle-dim", config.oracle_dim},
          {"format", to_string(config.format)}}},
    };
    json rows = json::array();
    for (const auto& row : result.rows) {
        const auto& x = row.sample;
        json j = {{"tau", x.tau}, {"r_tau", x.r_tau}, {"mean_n", x.mean_n},
                  {"n_tau", x.n_tau}, {"s_tau", x.s_tau}, {"g2", x.g2}};
        if (row.g2_oracle) j["g2_oracle"] = *row.g2_oracle;
        if (row.abs_err) j["abs_err"] = *row.abs_err;
        rows.push_back(std::move(j));
    }
    json doc = {{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
    if (result.compare) {
        const auto& c = *result.compare;
        doc["compare"] = {{"max_abs_err", c.max_abs_err},
                          {"max_rel_err", c.max_rel_err},
                          {"worst_tau", c.worst_tau},
                          {"passed", c.passed()},
                          {"convergence",
                           {{"dim", c.convergence.dim},
                            {"tail_mass", c.convergence.tail_mass},
                            {"rel_change", c.convergence.rel_change},
                            {"converged", c.convergence.converged}}}};
    }
    out << doc.dump(2) << "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form and Fock-oracle g2(tau) sweeps for displaced-squeezed thermal states", "g2sweep"};
    RawOptions raw;
    configure(app, raw);
    RunConfig config;
    try {
        app.parse(reversed(args));
        config = to_config(raw);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "g2sweep: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_code::usage;
    } catch (const UsageError& e) {
        err << "g2sweep: " << e.what() << "\n";
        return exit_code::usage;
    }

    SweepResult result;
    try {
        result = execute(config);
    } catch (const UndefinedCoherence& e) {
        err << "g2sweep: " << e.what() << "\n";
        return exit_code::undefined_coherence;
    } catch (const DomainError& e) {
        err << "g2sweep: " << e.what() << "\n";
        return exit_code::usage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
        file.open(config.output_path, std::ios::binary);
        if (!file) {
            err << "g2sweep: cannot open " << config.output_path << "\n";
            return exit_code::usage;
        }
        sink = &file;
    }
    if (config.format == OutputFormat::json) {
        write_json(*sink, config, result);
    } else {
        write_csv(*sink, config, result);
    }

    if (result.compare && !result.compare->passed()) {
        const auto& c = *result.compare;
        err << "g2sweep: comparison failed (max_rel_err=" << fmt17(c.max_rel_err)
            << ", converged=" << (c.convergence.converged ? "true" : "false") << ")\n";
        return exit_code::comparison_failed;
    }
    return exit_code::ok;
}

}  // namespace g2coh
