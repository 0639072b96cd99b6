#pragma once

#include <stdexcept>
#include <string>

namespace redkit {

// Invalid input or violated precondition. The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside an algorithm (non-finite intermediate, lost
// convergence). The CLI maps this to exit code 1.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace redkit
