// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace usco {

// Bad input: dimensions, ranges, malformed configs. CLI maps this to exit 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Normal-mode analysis breaks down at 2|g| >= sqrt(omega_a*omega_b).
// Carries the critical coupling so callers can report how far off they are.
// CLI maps this to exit 3.
class stability_error : public std::runtime_error {
public:
    stability_error(const std::string& msg, double critical_g)
        : std::runtime_error(msg), critical_g_(critical_g) {}

    double critical_coupling() const { return critical_g_; }

private:
    double critical_g_;
};

// A time evolution populated the top Fock shells beyond tolerance; the
// result can no longer be trusted at this cutoff. CLI maps this to exit 4.
class cutoff_saturation_error : public std::runtime_error {
public:
    cutoff_saturation_error(const std::string& msg, double top_population, double time)
        : std::runtime_error(msg), top_population_(top_population), time_(time) {}

    double top_population() const { return top_population_; }
    double at_time() const { return time_; }

private:
    double top_population_;
    double time_;
};

} // namespace usco
