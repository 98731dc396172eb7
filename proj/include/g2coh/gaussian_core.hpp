#pragma once

#include <utility>

#include "g2coh/param_map.hpp"
#include "g2coh/types.hpp"

namespace g2coh {

/// Heisenberg flow exp(iHτ) a exp(−iHτ) = cosh_coeff·a + sinh_coeff·a† + shift.
struct FlowResult {
    cplx cosh_coeff{1.0, 0.0};
    cplx sinh_coeff{0.0, 0.0};
    ComplexAmplitude shift;

    /// |cosh_coeff|² − |sinh_coeff|², equal to one for a canonical transformation.
    double bogoliubov_defect() const;
};

/// One row of a τ sweep.
struct CoherenceSample {
    double tau = 0.0;
    double r_tau = 0.0;
    double mean_n = 0.0;  ///< ⟨a†(τ) a(τ)⟩
    double n_tau = 0.0;
    double s_tau = 0.0;
    double g2 = 0.0;
    ComplexAmplitude A_tau;
};

/// Below this |c| the removable singularity in α(τ) is evaluated by its series.
inline constexpr double kSmallCoupling = 1e-8;

/// r(τ) = 2|c|τ. Throws DomainError for τ < 0.
double r_of_tau(ComplexAmplitude c, double tau);

/// exp(iθ) of the squeeze generated by c, i.e. i c/|c|. Returns 1 for c = 0.
cplx squeeze_phase_factor(ComplexAmplitude c);

/// Displacement accumulated by the amplifier after time τ:
///   α(τ) = −i b* sinh r(τ)/(2|c|) − i b e^{iθ} (cosh r(τ) − 1)/(2|c|)
ComplexAmplitude alpha_of_tau(ComplexAmplitude b, ComplexAmplitude c, double tau);

FlowResult heisenberg_flow(ComplexAmplitude b, ComplexAmplitude c, double tau);

/// ⟨a(τ)⟩ over ρ_G: α cosh r(τ) − α* e^{iθ} sinh r(τ) + α(τ).
ComplexAmplitude A_of_tau(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c,
                          double tau);

/// ⟨a†a⟩ at τ = 0: (n̄ + 1/2) cosh 2r − 1/2 + |α|².
double mean_photon_initial(const GaussianStateParams& state);

/// ⟨a†(τ) a(τ)⟩ = (n̄ + 1/2) cosh[2(r + r(τ))] − 1/2 + |A(τ)|².
double mean_photon_of_tau(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c,
                          double tau);

/// Normal-order correlation ⟨u† v⟩ between the fluctuation parts of a(0) and a(τ).
double n_of_tau(double nbar, double r, double r_tau);
/// Anomalous correlation magnitude: ⟨v u⟩ = −e^{iθ} s(τ).
double s_of_tau(double nbar, double r, double r_tau);

/// The two bracketed coefficients of the g² numerator,
///   (α A* + α* A,  α A e^{−iθ} + α* A* e^{iθ}),
/// returned unreduced so callers can inspect their (vanishing) imaginary parts.
std::pair<cplx, cplx> g2_brackets(ComplexAmplitude alpha, ComplexAmplitude A_tau, cplx phase_factor);

/// Closed-form g²(τ) for evolution under raw couplings (b, c).
/// The squeeze phase of c must match the state's θ whenever both are defined.
/// Throws UndefinedCoherence for the vacuum.
double g2(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c, double tau);

/// Every closed-form quantity at one τ.
CoherenceSample coherence_sample(const GaussianStateParams& state, const HamiltonianParams& params, double tau);

/// State-first entry points: (b, c) are derived from (α, ξ, t).
double g2(const GenerationSpec& spec, double tau);
CoherenceSample coherence_sample(const GenerationSpec& spec, double tau);

}  // namespace g2coh
