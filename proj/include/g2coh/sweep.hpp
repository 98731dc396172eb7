#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "g2coh/fock_oracle.hpp"
#include "g2coh/gaussian_core.hpp"
#include "g2coh/types.hpp"

namespace g2coh {

enum class RunMode { closed_form, oracle, compare };
enum class OutputFormat { csv, json };

/// Process exit statuses of the sweep tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int undefined_coherence = 2;
inline constexpr int comparison_failed = 3;
}  // namespace exit_code

/// compare mode fails above this relative g² error
inline constexpr double kCompareTolerance = 1e-4;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    GaussianStateParams state;
    double t_gen = 1.0;
    double tau_max = 1.0;
    int steps = 200;
    RunMode mode = RunMode::closed_form;
    int oracle_dim = kDefaultOracleDim;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  ///< empty means standard output

    /// Throws UsageError on a violated invariant.
    void validate() const;
    GenerationSpec generation() const { return {state, t_gen}; }
};

/// Parses command-line arguments (without the program name). `--config <file>` reads a flat
/// `key = value` file whose keys are the long flag names; flags given on the command line win.
/// Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

struct CompareReport {
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double worst_tau = 0.0;
    TruncationReport convergence;

    bool passed() const { return convergence.converged && max_rel_err <= kCompareTolerance; }
};

struct SweepRow {
    CoherenceSample sample;
    std::optional<double> g2_oracle;
    std::optional<double> abs_err;
};

struct SweepResult {
    HamiltonianParams params;
    std::vector<SweepRow> rows;
    std::optional<CompareReport> compare;
};

/// Uniform grid of steps+1 delays over [0, tau_max].
std::vector<double> tau_grid(double tau_max, int steps);

/// Evaluates every row for the configured mode. Throws UndefinedCoherence before doing any
/// work when the state is the vacuum.
SweepResult execute(const RunConfig& config);

std::vector<CoherenceSample> run_sweep(const RunConfig& config);
CompareReport run_compare(const RunConfig& config);

void write_csv(std::ostream& out, const RunConfig& config, const SweepResult& result);
void write_json(std::ostream& out, const RunConfig& config, const SweepResult& result);

/// Full command-line entry point; returns one of the exit_code values.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string to_string(RunMode mode);
std::string to_string(OutputFormat format);

}  // namespace g2coh
