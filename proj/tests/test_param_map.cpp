#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "g2coh/errors.hpp"
#include "g2coh/param_map.hpp"

using namespace g2coh;
using std::numbers::pi;

namespace {

double angle_distance(double a, double b) {
    const double d = std::abs(normalize_angle(a) - normalize_angle(b));
    return std::min(d, 2.0 * pi - d);
}

}  // namespace

TEST_CASE("hamiltonian_from_state") {
    SUBCASE("squeezed vacuum") {
        const auto p = hamiltonian_from_state({{{}, SqueezeParam(0.6, 0.0), 0.0}, 1.0});
        CHECK(std::abs(p.c.value() - cplx{0.0, -0.3}) < 1e-15);
        CHECK(std::abs(p.b.value()) == 0.0);
    }
    SUBCASE("coherent drive limit") {
        const auto exact = hamiltonian_from_state({{{1.0, 0.0}, SqueezeParam(0.0, 0.0), 0.0}, 1.0});
        CHECK(exact.c.value() == cplx{});
        CHECK(std::abs(exact.b.value() - cplx{0.0, -1.0}) < 1e-15);
        // the direct formula at small r approaches the limit
        const auto near = hamiltonian_from_state({{{1.0, 0.0}, SqueezeParam(1e-6, 0.0), 0.0}, 1.0});
        CHECK(std::abs(near.b.value() - cplx{0.0, -1.0}) < 1e-6);
        CHECK(std::abs(near.c.value()) == doctest::Approx(5e-7));
    }
    SUBCASE("couplings scale as 1/t") {
        const GaussianStateParams s{{1.0, 0.0}, SqueezeParam(0.6, pi / 2), 0.0};
        const auto p1 = hamiltonian_from_state({s, 1.0});
        const auto p2 = hamiltonian_from_state({s, 2.0});
        CHECK(std::abs(p2.b.value() - 0.5 * p1.b.value()) < 1e-15);
        CHECK(std::abs(p2.c.value() - 0.5 * p1.c.value()) < 1e-15);
    }
    SUBCASE("r coth(r/2) series branch") {
        CHECK(r_coth_half_r(0.0) == 2.0);
        CHECK(std::abs(r_coth_half_r(0.999e-8) - r_coth_half_r(1.001e-8)) < 1e-14);
        CHECK(r_coth_half_r(1.0) == doctest::Approx(1.0 / std::tanh(0.5)));
    }
    SUBCASE("non-positive generation time") {
        const GaussianStateParams s{{1.0, 0.0}, SqueezeParam(0.6, 0.0), 0.0};
        CHECK_THROWS_AS(GenerationSpec(s, 0.0), DomainError);
        CHECK_THROWS_AS(GenerationSpec(s, -1.0), DomainError);
        GenerationSpec spec;
        spec.state = s;
        spec.t = -2.0;
        CHECK_THROWS_AS(hamiltonian_from_state(spec), DomainError);
    }
}

TEST_CASE("state_from_hamiltonian") {
    SUBCASE("no dynamics") {
        const auto s = state_from_hamiltonian({}, 1.0);
        CHECK(s.alpha.value() == cplx{});
        CHECK(s.xi.r() == 0.0);
        CHECK(s.xi.theta() == 0.0);
    }
    SUBCASE("pure squeeze") {
        const auto s = state_from_hamiltonian({{}, {0.0, -0.3}}, 1.0);
        CHECK(s.xi.r() == doctest::Approx(0.6));
        CHECK(angle_distance(s.xi.theta(), 0.0) < 1e-15);
    }
    SUBCASE("nbar passes through") {
        CHECK(state_from_hamiltonian({{0.2, 0.1}, {0.0, -0.3}}, 1.0, 0.7).nbar == 0.7);
    }
    CHECK_THROWS_AS(state_from_hamiltonian({}, 0.0), DomainError);
}

TEST_CASE("round trip over random states") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> mag(0.0, 3.0), ang(0.0, 2.0 * pi), logr(std::log(1e-6), std::log(3.0)),
        logt(std::log(0.1), std::log(10.0));
    for (int i = 0; i < 1000; ++i) {
        const GaussianStateParams s{ComplexAmplitude::polar(mag(rng), ang(rng)),
                                    SqueezeParam(std::exp(logr(rng)), ang(rng)), 0.25};
        const double t = std::exp(logt(rng));
        const auto back = state_from_hamiltonian(hamiltonian_from_state({s, t}), t, s.nbar);
        CHECK(std::abs(back.alpha.value() - s.alpha.value()) < 1e-10);
        CHECK(std::abs(back.xi.r() - s.xi.r()) < 1e-10);
        CHECK(angle_distance(back.xi.theta(), s.xi.theta()) < 1e-12);
        CHECK(back.nbar == s.nbar);
    }
}

TEST_CASE("b/|c| does not depend on t") {
    const GaussianStateParams s{ComplexAmplitude::polar(1.2, 0.4), SqueezeParam(0.7, 2.0), 0.0};
    const auto p1 = hamiltonian_from_state({s, 0.3});
    const auto p2 = hamiltonian_from_state({s, 4.0});
    CHECK(std::abs(p1.b.value() / p1.c.magnitude() - p2.b.value() / p2.c.magnitude()) < 1e-13);
}
