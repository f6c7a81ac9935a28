#pragma once

#include <stdexcept>
#include <string>

namespace bpd {

/// Malformed input: bad flag value, schema violation, out-of-range knob.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Geometric construction failed (containment, underflowing radius,
/// growth certificate violation). Messages name the offending annulus.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search exceeded its configured cap (square count, block horizon).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A function evaluated to a non-finite value at a quadrature node.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation point violated the guard distance around a measure atom.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two redundant computation paths disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bpd
