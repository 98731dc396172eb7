#pragma once

#include <stdexcept>
#include <string>

namespace g2coh {

/// Raised when an input violates a documented precondition (negative τ, t ≤ 0, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// g²(τ) has a vanishing denominator: the state is the vacuum (α = 0, ξ = 0, n̄ = 0).
class UndefinedCoherence : public std::runtime_error {
public:
    explicit UndefinedCoherence(const std::string& what = "undefined coherence: vacuum state has zero mean photon number")
        : std::runtime_error(what) {}
};

}  // namespace g2coh
