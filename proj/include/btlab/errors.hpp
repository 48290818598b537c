#pragma once

#include <stdexcept>
#include <string>

namespace btlab {

// All recoverable failures are typed so callers (and the CLI exit-code map)
// can tell refusals apart from bugs. "Exhausted" errors mean a tracked
// resource (digits, portrait depth, scan radius) ran out, never that an
// answer was silently approximated.

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error("precision exhausted: " + what) {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

struct WrongField : std::runtime_error {
    explicit WrongField(const std::string& what) : std::runtime_error("wrong field: " + what) {}
};

struct NotAUnit : std::runtime_error {
    explicit NotAUnit(const std::string& what) : std::runtime_error("not a unit: " + what) {}
};

struct RadiusTooLarge : std::runtime_error {
    explicit RadiusTooLarge(const std::string& what) : std::runtime_error("radius too large: " + what) {}
};

struct DepthExhausted : std::runtime_error {
    explicit DepthExhausted(const std::string& what) : std::runtime_error("portrait depth exhausted: " + what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range("index out of range: " + what) {}
};

struct WrongArity : std::invalid_argument {
    explicit WrongArity(const std::string& what) : std::invalid_argument("wrong arity: " + what) {}
};

struct ReductionFailed : std::runtime_error {
    long long budget;
    explicit ReductionFailed(long long b)
        : std::runtime_error("reduction failed within budget " + std::to_string(b)), budget(b) {}
};

struct CommonFixedVertex : std::runtime_error {
    explicit CommonFixedVertex(const std::string& what) : std::runtime_error("common fixed vertex: " + what) {}
};

struct NoWitness : std::runtime_error {
    explicit NoWitness(const std::string& what) : std::runtime_error("no witness: " + what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error("budget exceeded: " + what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument("parse error: " + what) {}
};

}  // namespace btlab
