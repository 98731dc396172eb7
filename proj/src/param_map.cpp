#include "g2coh/param_map.hpp"

#include <cmath>

#include "g2coh/errors.hpp"
#include "g2coh/gaussian_core.hpp"

namespace g2coh {

namespace {
constexpr double kSmallSqueeze = 1e-8;
}

GenerationSpec::GenerationSpec(GaussianStateParams state_, double t_) : state(state_), t(t_) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("generation time t must be positive");
}

double r_coth_half_r(double r) {
    if (r < kSmallSqueeze) return 2.0 + r * r / 6.0;
    return r / std::tanh(0.5 * r);
}

HamiltonianParams hamiltonian_from_state(const GenerationSpec& spec) {
    if (!(spec.t > 0.0)) throw DomainError("generation time t must be positive");
    const double r = spec.state.xi.r();
    const cplx alpha = spec.state.alpha;
    if (r == 0.0) {
        // pure coherent drive; θ is canonically 0
        return {ComplexAmplitude{-kI * std::conj(alpha) / spec.t}, ComplexAmplitude{}};
    }
    const cplx phase = spec.state.xi.phase_factor();
    const cplx tc = -0.5 * kI * r * phase;
    const cplx tb = -0.5 * kI * (alpha * std::conj(phase) * r + std::conj(alpha) * r_coth_half_r(r));
    return {ComplexAmplitude{tb / spec.t}, ComplexAmplitude{tc / spec.t}};
}

GaussianStateParams state_from_hamiltonian(const HamiltonianParams& params, double t, double nbar) {
    if (!(t > 0.0)) throw DomainError("generation time t must be positive");
    const cplx xi = 2.0 * kI * t * params.c.value();
    const ComplexAmplitude alpha = alpha_of_tau(params.b, params.c, t);
    return {alpha, SqueezeParam::from_complex(xi), nbar};
}

}  // namespace g2coh
