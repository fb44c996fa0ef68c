#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

/// Base class for all structured errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidProfileError : public Error {
public:
    using Error::Error;
};

class InvalidParameterError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Division by a series with vanishing constant term, sqrt of nonpositive
/// constant term, and similar truncated-ring failures.
class SeriesError : public Error {
public:
    using Error::Error;
};

class ImplicitSingularityError : public Error {
public:
    using Error::Error;
};

class DegenerateOrbitError : public Error {
public:
    using Error::Error;
};

class OrbitLeftDomainError : public Error {
public:
    using Error::Error;
};

class CompositionError : public Error {
public:
    using Error::Error;
};

enum class StabilityClass { Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Elliptic: return "elliptic";
        case StabilityClass::Parabolic: return "parabolic";
        default: return "hyperbolic";
    }
}

/// Linearization is not elliptic; carries the classification.
class StabilityError : public Error {
public:
    StabilityClass cls;
    StabilityError(StabilityClass c, const std::string& what) : Error(what), cls(c) {}
};

/// An eigenvalue resonance lambda^n = 1 blocked a reduction step.
class ResonanceError : public Error {
public:
    int order;  // the n with lambda^n = 1
    ResonanceError(int n, const std::string& what) : Error(what), order(n) {}
};

/// A formula was evaluated at (or too close to) a pole; names the factor.
class PoleError : public Error {
public:
    std::string factor;
    PoleError(std::string f, const std::string& what) : Error(what), factor(std::move(f)) {}
};

}  // namespace billiards
