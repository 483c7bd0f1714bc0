#pragma once

#include <stdexcept>
#include <string>

namespace urysohn {

/// Input violates an operation's precondition (dimension mismatch, bad exponent, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The small-gain condition fails or a control leaves the admissible ball.
class TheoryViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The grid cannot resolve a subset as small as the robustness estimate requires.
class GridTooCoarse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or schema-invalid run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace urysohn

namespace urysohn {

/// Picard iteration hit its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace urysohn
