#pragma once

#include <stdexcept>
#include <string>

namespace mmph {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input bytes do not parse as the requested format.
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// A parsed or supplied pixel value lies outside the declared range.
class ValueOutOfRange : public Error {
public:
    using Error::Error;
};

/// An image with zero rows or zero columns was supplied or decoded.
class EmptyImage : public Error {
public:
    using Error::Error;
};

/// Two images that must share dimensions do not.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A structuring-element or stage index is out of its valid range.
class InvalidIndex : public Error {
public:
    using Error::Error;
};

/// An image sequence is not nested: some stage loses a black pixel.
/// Carries the offending stage and pixel so callers can report precisely.
class NonMonotoneSequence : public Error {
public:
    NonMonotoneSequence(int stage, int x, int y)
        : Error("sequence not nested: stage " + std::to_string(stage) +
                " turns black pixel (" + std::to_string(x) + ", " +
                std::to_string(y) + ") white"),
          stage_(stage),
          x_(x),
          y_(y) {}

    int stage() const noexcept { return stage_; }
    int x() const noexcept { return x_; }
    int y() const noexcept { return y_; }

private:
    int stage_;
    int x_;
    int y_;
};

/// A filtered complex violates a structural invariant (face ordering,
/// boundary arity, value monotonicity).
class MalformedComplex : public Error {
public:
    using Error::Error;
};

/// An operation mixing persistence diagrams requires equal scales.
class ScaleMismatch : public Error {
public:
    using Error::Error;
};

/// A threshold list is empty, unsorted, or out of the value range.
class InvalidThresholds : public Error {
public:
    using Error::Error;
};

}  // namespace mmph
