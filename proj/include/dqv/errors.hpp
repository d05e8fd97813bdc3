#pragma once

#include <stdexcept>
#include <string>

namespace dqv {

// Parameters are valid but outside the regime where the calculus applies
// (A < 100, f < 9/10). Callers that sweep parameters catch this and chart
// the frontier instead of dying.
class feasibility_error : public std::runtime_error {
public:
    explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

// A resource guard tripped (enumeration too large, statevector too wide).
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dqv
