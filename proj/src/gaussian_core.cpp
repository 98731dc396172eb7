#include "g2coh/gaussian_core.hpp"

#include <cmath>

#include "g2coh/errors.hpp"

namespace g2coh {

namespace {

void require_nonnegative_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("delay tau must be finite and >= 0");
}

// e^{iθ} entering the g2 brackets: the coupling fixes θ when it is non-zero,
// and it has to agree with the squeeze axis of the state.
cplx resolve_phase(const GaussianStateParams& state, ComplexAmplitude c) {
    if (c.value() == cplx{}) return state.xi.phase_factor();
    const cplx from_coupling = squeeze_phase_factor(c);
    if (state.xi.r() > 0.0 && std::abs(from_coupling - state.xi.phase_factor()) > 1e-9) {
        throw DomainError("coupling c squeezes along a different axis than the state's theta");
    }
    return from_coupling;
}

}  // namespace

double FlowResult::bogoliubov_defect() const {
    return std::norm(cosh_coeff) - std::norm(sinh_coeff);
}

double r_of_tau(ComplexAmplitude c, double tau) {
    require_nonnegative_tau(tau);
    return 2.0 * c.magnitude() * tau;
}

cplx squeeze_phase_factor(ComplexAmplitude c) {
    const double mag = c.magnitude();
    if (mag == 0.0) return {1.0, 0.0};
    return kI * c.value() / mag;
}

ComplexAmplitude alpha_of_tau(ComplexAmplitude b, ComplexAmplitude c, double tau) {
    require_nonnegative_tau(tau);
    const cplx bv = b.value();
    const double mag = c.magnitude();
    if (mag < kSmallCoupling) {
        // sinh r/(2|c|) -> τ,  (cosh r - 1)/(2|c|) -> |c| τ²,  and e^{iθ}|c| = i c
        return {-kI * std::conj(bv) * tau + bv * c.value() * tau * tau};
    }
    const double r = 2.0 * mag * tau;
    const double sinh_term = std::sinh(r) / (2.0 * mag);
    const double half = std::sinh(0.5 * r);
    const double cosh_term = 2.0 * half * half / (2.0 * mag);  // cosh r - 1 without cancellation
    const cplx phase = squeeze_phase_factor(c);
    return {-kI * std::conj(bv) * sinh_term - kI * bv * phase * cosh_term};
}

FlowResult heisenberg_flow(ComplexAmplitude b, ComplexAmplitude c, double tau) {
    const double r = r_of_tau(c, tau);
    FlowResult flow;
    flow.cosh_coeff = std::cosh(r);
    // −i e^{iχ} sinh r = −e^{iθ} sinh r
    flow.sinh_coeff = -squeeze_phase_factor(c) * std::sinh(r);
    flow.shift = alpha_of_tau(b, c, tau);
    return flow;
}

ComplexAmplitude A_of_tau(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c, double tau) {
    const double r = r_of_tau(c, tau);
    const cplx alpha = state.alpha;
    const cplx phase = squeeze_phase_factor(c);
    return {alpha * std::cosh(r) - std::conj(alpha) * phase * std::sinh(r) + alpha_of_tau(b, c, tau).value()};
}

double mean_photon_initial(const GaussianStateParams& state) {
    return (state.nbar + 0.5) * std::cosh(2.0 * state.xi.r()) - 0.5 + std::norm(state.alpha.value());
}

double mean_photon_of_tau(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c, double tau) {
    const double r_tau = r_of_tau(c, tau);
    const cplx A = A_of_tau(state, b, c, tau);
    return (state.nbar + 0.5) * std::cosh(2.0 * (state.xi.r() + r_tau)) - 0.5 + std::norm(A);
}

double n_of_tau(double nbar, double r, double r_tau) {
    return (nbar + 0.5) * std::cosh(2.0 * r + r_tau) - 0.5 * std::cosh(r_tau);
}

double s_of_tau(double nbar, double r, double r_tau) {
    return (nbar + 0.5) * std::sinh(2.0 * r + r_tau) - 0.5 * std::sinh(r_tau);
}

std::pair<cplx, cplx> g2_brackets(ComplexAmplitude alpha_amp, ComplexAmplitude A_tau, cplx phase) {
    const cplx alpha = alpha_amp;
    const cplx A = A_tau;
    const cplx normal = alpha * std::conj(A) + std::conj(alpha) * A;
    const cplx anomalous = alpha * A * std::conj(phase) + std::conj(alpha) * std::conj(A) * phase;
    return {normal, anomalous};
}

double g2(const GaussianStateParams& state, ComplexAmplitude b, ComplexAmplitude c, double tau) {
    return coherence_sample(state, HamiltonianParams{b, c}, tau).g2;
}

CoherenceSample coherence_sample(const GaussianStateParams& state, const HamiltonianParams& params, double tau) {
    if (state.is_vacuum()) throw UndefinedCoherence();
    const cplx phase = resolve_phase(state, params.c);

    CoherenceSample out;
    out.tau = tau;
    out.r_tau = r_of_tau(params.c, tau);
    out.A_tau = A_of_tau(state, params.b, params.c, tau);
    out.mean_n = mean_photon_of_tau(state, params.b, params.c, tau);
    out.n_tau = n_of_tau(state.nbar, state.xi.r(), out.r_tau);
    out.s_tau = s_of_tau(state.nbar, state.xi.r(), out.r_tau);

    const auto [normal, anomalous] = g2_brackets(state.alpha, out.A_tau, phase);
    const double scale = 1.0 + std::abs(normal) + std::abs(anomalous);
    if (std::abs(normal.imag()) > 1e-12 * scale || std::abs(anomalous.imag()) > 1e-12 * scale) {
        throw std::logic_error("g2 numerator brackets are not real");
    }

    const double denominator = mean_photon_initial(state) * out.mean_n;
    if (!(denominator > 0.0)) throw UndefinedCoherence();
    const double numerator = out.n_tau * out.n_tau + out.s_tau * out.s_tau + normal.real() * out.n_tau -
                             anomalous.real() * out.s_tau;
    out.g2 = 1.0 + numerator / denominator;
    return out;
}

double g2(const GenerationSpec& spec, double tau) {
    return coherence_sample(spec, tau).g2;
}

CoherenceSample coherence_sample(const GenerationSpec& spec, double tau) {
    return coherence_sample(spec.state, hamiltonian_from_state(spec), tau);
}

}  // namespace g2coh
