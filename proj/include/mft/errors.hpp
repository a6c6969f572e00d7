#pragma once

#include <stdexcept>
#include <string>

namespace mft {

// Input outside an operation's mathematical domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation would need a moment variable beyond the declared budget.
// Truncation must fail loudly, never silently extend.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric routine could not reach its requested tolerance.
class ToleranceError : public std::runtime_error {
public:
    double achieved;
    ToleranceError(const std::string& msg, double got)
        : std::runtime_error(msg), achieved(got) {}
};

// Two routes that must agree did not, or an intermediate violated an
// invariant that signals a bug upstream.
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mft
