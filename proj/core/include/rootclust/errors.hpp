#pragma once

#include <stdexcept>
#include <string>

namespace rootclust {

// Retriable: a soft test could not be decided within the precision ceiling.
// Callers either raise the ceiling or convert the condition into a failure
// (e.g. a Newton step demotes it to "Newton failed").
class PrecisionExhausted : public std::runtime_error {
public:
    explicit PrecisionExhausted(std::string context)
        : std::runtime_error("precision ceiling exhausted: " + context),
          context_(std::move(context)) {}
    const std::string& context() const { return context_; }

private:
    std::string context_;
};

// Ball division where the divisor ball contains zero. Retriable by
// re-evaluating the divisor at higher precision.
class DivisorStraddlesZero : public std::runtime_error {
public:
    DivisorStraddlesZero() : std::runtime_error("ball divisor straddles zero") {}
};

class ZeroLeadingCoefficient : public std::runtime_error {
public:
    ZeroLeadingCoefficient() : std::runtime_error("polynomial has zero leading coefficient") {}
};

// Input JSON did not match the polynomial/run schema; `where` is a
// JSON-pointer-ish location of the offending node.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string where, std::string what_msg)
        : std::runtime_error("schema error at " + where + ": " + what_msg),
          where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Exact root counting hit a root exactly on the disc boundary while the
// caller asked for strict counting.
class BoundaryAmbiguity : public std::runtime_error {
public:
    BoundaryAmbiguity() : std::runtime_error("root lies exactly on the disc boundary") {}
};

}  // namespace rootclust
