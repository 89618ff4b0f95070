#pragma once

#include <stdexcept>
#include <string>

namespace levy {

// A model or argument falls outside the supported regime (heavy tail where a
// light tail is required, wrong spectral side, missing safety loading, ...).
class regime_error : public std::domain_error {
public:
    explicit regime_error(const std::string& what) : std::domain_error(what) {}
};

// A requested moment does not exist under the given law.
class moment_error : public regime_error {
public:
    explicit moment_error(const std::string& what) : regime_error(what) {}
};

// An iterative solver did not converge; carries the last bracket examined.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double bracket_lo, double bracket_hi)
        : std::runtime_error(what + " (last bracket [" + std::to_string(bracket_lo) +
                             ", " + std::to_string(bracket_hi) + "])"),
          lo_(bracket_lo),
          hi_(bracket_hi) {}

    double bracket_lo() const { return lo_; }
    double bracket_hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

// A run configuration was rejected during validation; carries the field path.
class config_error : public std::runtime_error {
public:
    config_error(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field_(std::move(field_path)) {}

    const std::string& field_path() const { return field_; }

private:
    std::string field_;
};

} // namespace levy
