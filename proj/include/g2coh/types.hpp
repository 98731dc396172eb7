#pragma once

#include <complex>
#include <numbers>

namespace g2coh {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Wraps an angle into [0, 2π).
double normalize_angle(double angle);

/// Complex scalar with polar accessors. Holds α, A(τ), α(τ), b and c.
class ComplexAmplitude {
public:
    constexpr ComplexAmplitude() = default;
    constexpr ComplexAmplitude(double re, double im) : value_(re, im) {}
    constexpr ComplexAmplitude(cplx value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    static ComplexAmplitude polar(double magnitude, double phase);

    constexpr double re() const { return value_.real(); }
    constexpr double im() const { return value_.imag(); }
    double magnitude() const { return std::abs(value_); }
    /// Phase in (−π, π]; zero for the origin.
    double phase() const { return std::arg(value_); }
    constexpr cplx value() const { return value_; }
    constexpr operator cplx() const { return value_; }  // NOLINT(google-explicit-constructor)

    friend constexpr bool operator==(const ComplexAmplitude&, const ComplexAmplitude&) = default;

private:
    cplx value_{};
};

/// Squeeze parameter ξ = r exp(iθ) with r ≥ 0 and θ kept in [0, 2π).
class SqueezeParam {
public:
    SqueezeParam() = default;
    SqueezeParam(double r, double theta);

    static SqueezeParam from_complex(cplx xi);

    double r() const { return r_; }
    double theta() const { return theta_; }
    cplx value() const { return std::polar(r_, theta_); }
    /// exp(iθ)
    cplx phase_factor() const { return std::polar(1.0, theta_); }

private:
    double r_ = 0.0;
    double theta_ = 0.0;
};

/// Displaced-squeezed thermal state D(α) S(ξ) ρ₀ S(−ξ) D(−α), with n̄ the mean occupation of ρ₀.
struct GaussianStateParams {
    ComplexAmplitude alpha;
    SqueezeParam xi;
    double nbar = 0.0;

    GaussianStateParams() = default;
    GaussianStateParams(ComplexAmplitude alpha_, SqueezeParam xi_, double nbar_);

    /// True for α = 0, ξ = 0, n̄ = 0, where g²(τ) is undefined.
    bool is_vacuum() const;
};

/// Couplings of H = c a†² + c* a² + b a + b* a† (interaction picture, ħ = 1).
struct HamiltonianParams {
    ComplexAmplitude b;
    ComplexAmplitude c;
};

/// Mean occupation 1/(exp(βħω) − 1) of a thermal mode; argument is the product βħω > 0.
double thermal_occupation(double beta_hbar_omega);

}  // namespace g2coh
