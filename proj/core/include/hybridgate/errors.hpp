#pragma once

#include <stdexcept>
#include <string>

namespace hybridgate {

/// Input outside the domain of a formula (invalid quantum numbers, zero
/// separation, negative Breit-Rabi radicand, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Integrator or quadrature was configured in a way that cannot meet its
/// accuracy contract (step too large for the Hamiltonian norm).
class NumericalConfigError : public std::runtime_error {
public:
    explicit NumericalConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical run violated its own accuracy contract (norm drift,
/// quadrature that does not converge).
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hybridgate
