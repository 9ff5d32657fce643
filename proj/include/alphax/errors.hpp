#pragma once

#include <stdexcept>
#include <string>

namespace alphax {

// Bad input: value outside the domain, malformed digit list, distribution
// that does not sum to 1, base not greater than 1, and so on.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// The computation cannot be completed within the configured budgets: a digit
// exceeded the cap (the point is indistinguishable from 0 at this precision),
// a series needs more terms than allowed, a remainder fell below resolution.
class precision_exhausted : public std::runtime_error {
public:
    explicit precision_exhausted(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace alphax
