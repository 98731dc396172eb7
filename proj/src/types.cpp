#include "g2coh/types.hpp"

#include <cmath>

#include "g2coh/errors.hpp"

namespace g2coh {

double normalize_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(angle, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    // fmod of a value just below zero can round back up to 2π
    if (wrapped >= two_pi) wrapped = 0.0;
    return wrapped;
}

ComplexAmplitude ComplexAmplitude::polar(double magnitude, double phase) {
    if (!(magnitude >= 0.0)) throw DomainError("amplitude magnitude must be non-negative");
    return {std::polar(magnitude, phase)};
}

SqueezeParam::SqueezeParam(double r, double theta) : r_(r), theta_(normalize_angle(theta)) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeeze magnitude r must be finite and >= 0");
    if (!std::isfinite(theta)) throw DomainError("squeeze phase must be finite");
}

SqueezeParam SqueezeParam::from_complex(cplx xi) {
    const double r = std::abs(xi);
    return {r, r > 0.0 ? std::arg(xi) : 0.0};
}

GaussianStateParams::GaussianStateParams(ComplexAmplitude alpha_, SqueezeParam xi_, double nbar_)
    : alpha(alpha_), xi(xi_), nbar(nbar_) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("mean thermal occupation must be finite and >= 0");
    if (!std::isfinite(alpha.re()) || !std::isfinite(alpha.im())) throw DomainError("displacement must be finite");
}

bool GaussianStateParams::is_vacuum() const {
    return nbar == 0.0 && xi.r() == 0.0 && alpha.value() == cplx{};
}

double thermal_occupation(double beta_hbar_omega) {
    if (!(beta_hbar_omega > 0.0)) throw DomainError("beta*hbar*omega must be positive");
    return 1.0 / std::expm1(beta_hbar_omega);
}

}  // namespace g2coh
