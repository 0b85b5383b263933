#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brownspec {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (pole of Gamma, negative modulus...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Invalid or inconsistent configuration (bad scheme/medium pair, coarse step...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Fluidity or compliance has a pole at the requested frequency.
class PoleError : public Error {
public:
    PoleError(const std::string& what, double omega) : Error(what), omega_(omega) {}
    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

// Closed form not available for this network topology.
class UnsupportedTopology : public Error {
public:
    using Error::Error;
};

// Sampled curve is not on a uniform grid where one is required.
class GridError : public Error {
public:
    using Error::Error;
};

// Covariance sequence is not positive semidefinite beyond clipping tolerance.
class IndefiniteCovariance : public Error {
public:
    using Error::Error;
};

// Simulation state left the thermal scale by many orders of magnitude.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace brownspec
