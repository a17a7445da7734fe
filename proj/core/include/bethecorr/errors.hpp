#pragma once

#include <stdexcept>
#include <string>

namespace bethecorr {

// Base class for every error raised by the library.  Callers that want a
// single catch site can catch this; the derived types below distinguish
// configuration mistakes from numerical breakdowns.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two rapidities closer than the separation guard, or an evaluation point
// sitting on a pole of g/f/t.
class CoincidingArguments : public Error {
public:
    using Error::Error;
};

// Set sizes do not satisfy the contract of the routine (e.g. #v != #u).
class CardinalityMismatch : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

// Request exceeds a hard combinatorial cap (bipartition enumeration,
// recursion depth, brute-force particle number).
class CapExceeded : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class MaxIterations : public Error {
public:
    MaxIterations(const std::string& what, double best_residual)
        : Error(what), best_residual(best_residual) {}
    double best_residual;
};

class IllConditioned : public Error {
public:
    using Error::Error;
};

// Input set is not an equally spaced string within tolerance.
class NotAString : public Error {
public:
    using Error::Error;
};

// Hypergeometric series does not terminate (second parameter is not a
// non-positive integer).
class NonTerminating : public Error {
public:
    using Error::Error;
};

// Closed-form string expressions have genuine poles at integer values of
// the offset parameter s (inside the window) or the twist parameter gamma.
class PoleAtS : public Error {
public:
    using Error::Error;
};

class PoleAtGamma : public Error {
public:
    using Error::Error;
};

// A state handed to a form-factor or generating-function routine fails its
// Bethe-equation residual check.
class NotOnShell : public Error {
public:
    using Error::Error;
};

// Extrapolated limits disagree beyond tolerance.
class NotConverged : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

} // namespace bethecorr
