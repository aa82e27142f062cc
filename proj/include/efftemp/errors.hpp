#pragma once

#include <stdexcept>
#include <string>

namespace efftemp {

/// Malformed or invalid input: bad dimensions, non-Hermitian operators,
/// states that are not density matrices, parameters out of range.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed or was asked for something outside its
/// domain (bisection bracket, LP infeasibility, fixed-point failure).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace efftemp
