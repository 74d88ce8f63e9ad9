#pragma once

#include <stdexcept>
#include <string>

namespace edgedim {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// An iterative method (quadrature, root finder) ran out of budget before
/// reaching its tolerance. Carries the best estimate it had.
class NonConvergenceError : public std::runtime_error
{
  public:
    NonConvergenceError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

/// The dimensioning problem has no feasible point. `constraint()` names the
/// binding constraint ("deadline", "bandwidth", ...).
class InfeasibleError : public std::runtime_error
{
  public:
    InfeasibleError(std::string constraint, const std::string& what)
        : std::runtime_error(what), constraint_(std::move(constraint))
    {
    }

    const std::string& constraint() const noexcept { return constraint_; }

  private:
    std::string constraint_;
};

/// Invalid configuration value. `field()` is the dotted path of the offending key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace edgedim
