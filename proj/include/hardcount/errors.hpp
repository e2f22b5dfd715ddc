#ifndef HARDCOUNT_ERRORS_HPP
#define HARDCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardcount {

// Exit-code taxonomy used by the CLI: 2 precondition, 3 certification, 4 budget.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a requested accuracy cannot be certified (truncation order out of
// reach, containment check failure, evaluation point outside the declared region).
struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

// Distinct flavor of certification failure: the evaluation point falls outside
// the declared zero-free region.  Callers of the characteristic-function
// approximation catch this and charge the node to the high-phase tail budget.
struct region_error : certification_error {
    explicit region_error(const std::string& what) : certification_error(what) {}
};

// Probabilistic budget exhausted (rejection cap, binary-search failure).
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hardcount

#endif
