#pragma once

// Brute-force reference for the closed forms: every operator is a dense matrix over the
// lowest `dim` number states and every expectation value is a literal trace.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "g2coh/gaussian_core.hpp"
#include "g2coh/types.hpp"

namespace g2coh {

using FockMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultOracleDim = 120;
/// convergence_check thresholds
inline constexpr double kTailThreshold = 1e-8;
inline constexpr double kRelChangeThreshold = 1e-6;

struct LadderOperators {
    FockMatrix a;
    FockMatrix adag;
};

/// a|n⟩ = √n |n−1⟩ truncated to `dim` states. Throws DomainError for dim < 2.
LadderOperators ladder_operators(int dim);

/// D(α) = exp(α a† − α* a), exponentiated exactly for the truncated generator.
FockMatrix displacement(ComplexAmplitude alpha, int dim);
/// S(ξ) = exp(−(ξ/2) a†² + (ξ*/2) a²)
FockMatrix squeeze(const SqueezeParam& xi, int dim);

/// Populations (n̄/(n̄+1))ⁿ renormalized over the truncated basis.
Eigen::VectorXd thermal_weights(double nbar, int dim);
FockMatrix thermal_rho(double nbar, int dim);
/// ρ_G = D(α) S(ξ) ρ₀ S(−ξ) D(−α)
FockMatrix gaussian_rho(const GaussianStateParams& state, int dim);

FockMatrix hamiltonian_matrix(const HamiltonianParams& params, int dim);
/// exp(iHτ) a exp(−iHτ) through the eigendecomposition of the Hermitian H.
FockMatrix heisenberg_a_matrix(const HamiltonianParams& params, double tau, int dim);

/// Matrix of cosh_coeff·a + sinh_coeff·a† + shift·I.
FockMatrix flow_matrix(const FlowResult& flow, int dim);
/// S(−ξ) D(−α) a D(α) S(ξ)
FockMatrix conjugated_annihilator(ComplexAmplitude alpha, const SqueezeParam& xi, int dim);

/// Spectral norm of the top-left block × block corner.
double projected_norm(const FockMatrix& m, int block);

struct DensityDiagnostics {
    double hermiticity_error = 0.0;  ///< max |ρ − ρ†|
    double trace_error = 0.0;        ///< |Tr ρ − 1|
    double min_eigenvalue = 0.0;
};
DensityDiagnostics density_diagnostics(const FockMatrix& rho);

/// Oracle observables at one τ.
struct OracleValues {
    double tau = 0.0;
    double mean_n0 = 0.0;     ///< Tr[ρ_G a†a]
    double mean_n_tau = 0.0;  ///< Tr[ρ_G a†(τ) a(τ)]
    double g2 = 0.0;          ///< Tr[ρ_G a† a†(τ) a(τ) a] / (mean_n0 · mean_n_tau)
    double tail_mass = 0.0;   ///< top-10% population of ρ_G and of ρ_G evolved by τ, whichever is larger
};

/// Caches the spectral data for one (α, ξ, b, c, dim) so that many (n̄, τ) pairs can be
/// evaluated cheaply. Traces use the eigen-expansion of ρ₀, which is diagonal, so
///   Tr[ρ_G X] = Σ_k p_k ⟨k|U† X U|k⟩,   U = D(α) S(ξ),
/// is evaluated column by column; populations below 1e-20 are dropped.
class OracleEvaluator {
public:
    OracleEvaluator(ComplexAmplitude alpha, const SqueezeParam& xi, const HamiltonianParams& params, int dim);

    int dim() const { return dim_; }

    std::vector<OracleValues> evaluate(double nbar, std::span<const double> taus) const;
    OracleValues evaluate(double nbar, double tau) const;

    /// Columns U|k⟩, k < count, of U = D(α) S(ξ).
    Eigen::MatrixXcd gaussian_columns(int count) const;

private:
    int dim_;
    ComplexAmplitude alpha_;
    SqueezeParam xi_;
    Eigen::MatrixXcd h_vectors_;
    Eigen::VectorXd h_values_;
    Eigen::MatrixXd disp_vectors_;
    Eigen::VectorXd disp_values_;
    Eigen::MatrixXd sq_vectors_;
    Eigen::VectorXd sq_values_;
};

double g2_oracle(const GaussianStateParams& state, const HamiltonianParams& params, double tau, int dim);
double mean_n_oracle(const GaussianStateParams& state, const HamiltonianParams& params, double tau, int dim);

struct TruncationReport {
    int dim = 0;
    double tail_mass = 0.0;
    bool converged = false;
    double rel_change = 0.0;  ///< |g²(2·dim) − g²(dim)| / g²(dim)
    double g2_at_dim = 0.0;
    double g2_at_double = 0.0;
};

/// Re-evaluates g2_oracle at dim and 2·dim. Converged when the relative change is below
/// kRelChangeThreshold and the tail mass at dim is below kTailThreshold.
TruncationReport convergence_check(const GaussianStateParams& state, const HamiltonianParams& params, double tau,
                                   int dim);
std::vector<TruncationReport> convergence_check(const GaussianStateParams& state, const HamiltonianParams& params,
                                                std::span<const double> taus, int dim);

struct AdaptiveOracleResult {
    OracleValues values;  ///< taken at report.dim
    TruncationReport report;
};

/// Starts at start_dim and doubles until convergence_check passes or max_dim is reached;
/// report.converged is false in the latter case.
AdaptiveOracleResult g2_oracle_adaptive(const GaussianStateParams& state, const HamiltonianParams& params, double tau,
                                        int start_dim = kDefaultOracleDim, int max_dim = 8 * kDefaultOracleDim);

}  // namespace g2coh
