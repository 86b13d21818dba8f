#pragma once

#include <stdexcept>
#include <string>

namespace fdlab {

// Grid or transform cannot resolve the requested feature (mode count,
// symbol decay, quadrature target).
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Advective CFL bound violated; carries the largest admissible step.
class CflError : public std::runtime_error {
public:
    CflError(const std::string& msg, double admissible)
        : std::runtime_error(msg), admissible_dt(admissible) {}
    double admissible_dt;
};

// Sup-norm blow-up guard tripped during time integration.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Reference two-point solve failed to converge under refinement.
class OracleFailure : public std::runtime_error {
public:
    explicit OracleFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Barrier constant search exhausted its range without a sign certificate.
class NoCertificateError : public std::runtime_error {
public:
    explicit NoCertificateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometric request leaves the computational domain (e.g. rescaled support).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file / flag resolution problems; message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fdlab
