#pragma once

#include "g2coh/types.hpp"

namespace g2coh {

/// A Gaussian state together with the time t the amplifier needs to prepare it from ρ₀.
struct GenerationSpec {
    GaussianStateParams state;
    double t = 1.0;

    GenerationSpec() = default;
    GenerationSpec(GaussianStateParams state_, double t_);
};

// r·coth(r/2), switching to 2 + r²/6 below 1e-8.
double r_coth_half_r(double r);

/// Couplings (b, c) that evolve ρ₀ into the requested ρ_G in time t:
///   t c = −(i/2) r e^{iθ}
///   t b = −(i/2) (α e^{−iθ} r + α* r coth(r/2))
/// For r = 0 this is the pure coherent drive b = −i α*/t, c = 0.
HamiltonianParams hamiltonian_from_state(const GenerationSpec& spec);

/// Forward map: the state reached from ρ₀ after evolving with (b, c) for time t.
/// ξ = 2 i t c and α = α(t); n̄ is carried through unchanged. θ = 0 when c = 0.
GaussianStateParams state_from_hamiltonian(const HamiltonianParams& params, double t, double nbar = 0.0);

}  // namespace g2coh
