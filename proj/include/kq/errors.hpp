#pragma once

#include <stdexcept>
#include <string>

namespace kq {

/// Malformed or out-of-range arguments (non-unit axis, negative width, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closed form was asked for outside the regime where it holds
/// (measurement before the kick, pulse not contained in the window).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Loss of unitarity beyond tolerance; usually means the time step is too coarse.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pointwise evaluation of an ideal (delta-function) kick.
class UnsupportedEvaluation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace kq
