#pragma once

#include <stdexcept>
#include <string>

namespace ucb {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two boundaries touch instead of crossing (within tolerance).
class TangencyError : public Error {
public:
    using Error::Error;
};

// Two members are the same set within tolerance.
class CoincidentError : public Error {
public:
    using Error::Error;
};

// Two intersection points of one pair share an abscissa.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Operation called on the wrong family kind (discs vs. curves).
class KindError : public Error {
public:
    using Error::Error;
};

// Exact clique search ran past its node budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace ucb
