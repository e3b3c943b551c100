#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fiwi {

struct FieldViolation {
    std::string field;
    std::string reason;
};

// Thrown by validate_config; carries every violated invariant at once.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<FieldViolation> violations)
        : std::runtime_error(format(violations)), violations_(std::move(violations)) {}

    ValidationError(std::initializer_list<FieldViolation> violations)
        : ValidationError(std::vector<FieldViolation>(violations)) {}

    const std::vector<FieldViolation>& violations() const { return violations_; }

    bool mentions(const std::string& field) const {
        for (const auto& v : violations_)
            if (v.field == field) return true;
        return false;
    }

private:
    static std::string format(const std::vector<FieldViolation>& vs) {
        std::string msg = "invalid config:";
        for (const auto& v : vs) msg += " [" + v.field + ": " + v.reason + "]";
        return msg;
    }

    std::vector<FieldViolation> violations_;
};

class NonSquareCount : public std::runtime_error {
public:
    explicit NonSquareCount(int n)
        : std::runtime_error("num_aps=" + std::to_string(n) +
                             " is not a perfect square and no explicit AP layout was given") {}
};

class NegativeDistance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NegativePower : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyUserSet : public std::invalid_argument {
public:
    EmptyUserSet() : std::invalid_argument("water-filling needs at least one user") {}
};

class NoTransmitBudget : public std::runtime_error {
public:
    explicit NoTransmitBudget(double cache_power, double budget)
        : std::runtime_error("caching power " + std::to_string(cache_power) +
                             " W consumes the whole usable budget " + std::to_string(budget) + " W") {}
};

class CorruptTable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IntegrationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fiwi
