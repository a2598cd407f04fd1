#pragma once

#include <stdexcept>
#include <string>

namespace frobsub {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Malformed matrix / substitution input.
class ParseError : public Error {
public:
    using Error::Error;
};

// A hypothesis of the convergence theory does not hold for the input.
class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class NotExpanding : public HypothesisViolated {
public:
    using HypothesisViolated::HypothesisViolated;
};

class NotPBFrobenius : public HypothesisViolated {
public:
    using HypothesisViolated::HypothesisViolated;
};

class ZeroColumn : public HypothesisViolated {
public:
    using HypothesisViolated::HypothesisViolated;
};

class NotPrincipal : public HypothesisViolated {
public:
    using HypothesisViolated::HypothesisViolated;
};

class NoSeedWord : public HypothesisViolated {
public:
    using HypothesisViolated::HypothesisViolated;
};

// lambda <= spectral radius of the dependency part; an upstream
// classification went wrong.
class SingularSystem : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class ImageTooShort : public Error {
public:
    using Error::Error;
};

class LengthOverflow : public Error {
public:
    using Error::Error;
};

}  // namespace frobsub
