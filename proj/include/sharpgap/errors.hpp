#pragma once

#include <stdexcept>
#include <string>

namespace sharpgap {

// Base for every failure raised by the library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad model parameters or arguments (n < 2, D <= 0, Bonnet-Myers violation, ...).
class InvalidParams : public Error {
public:
    using Error::Error;
};

// T_kappa evaluated at (or within tolerance of) a zero of C_kappa.
class PoleError : public Error {
public:
    using Error::Error;
};

// Bisection bracket could not be established, or grid refinement did not settle.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// Explicit time step collapsed below the usable bound.
class CflViolation : public Error {
public:
    using Error::Error;
};

// Flux coefficient is unbounded (p < 2, epsilon = 0, zero gradient).
class DegenerateFlux : public Error {
public:
    using Error::Error;
};

// Two series that must share time stamps or grids do not.
class Mismatch : public Error {
public:
    using Error::Error;
};

} // namespace sharpgap
