#pragma once

#include <stdexcept>
#include <string>

namespace landis {

/// Rejected input: bad parameters, malformed data, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not produce a trustworthy number
/// (NaN in a tail, quadrature failure, minimum principle violated).
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace landis
