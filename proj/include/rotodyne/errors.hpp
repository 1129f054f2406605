// errors.hpp: exception types shared by every rotodyne module

#pragma once

#include <stdexcept>
#include <string>

namespace rotodyne {

// Rejected parameters or malformed user input. The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure could not deliver a result at the requested accuracy
// (ODE step underflow, quadrature non-convergence, unresolved eigenpath,
// degenerate eigenvalues). The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rotodyne
