#pragma once

#include <stdexcept>
#include <string>

namespace bohmtoa {

// Raised for queries at r = 0, where the inverse time-of-arrival map is
// multivalued and the detection interval collapses onto the detector.
class SingularLimitError : public std::domain_error {
public:
    explicit SingularLimitError(const std::string& what) : std::domain_error(what) {}
};

// Argument outside the domain of a closed-form map (e.g. q0 outside I_BSS).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine ran out of budget before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace bohmtoa
