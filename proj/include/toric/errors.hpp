#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// Maps to CLI exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Maps to CLI exit code 3.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Maps to CLI exit code 4 (well-formed input, no answer: non-representable
// matroid, missing precondition, empty locus ...).
struct Infeasible : std::runtime_error {
    explicit Infeasible(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace toric
