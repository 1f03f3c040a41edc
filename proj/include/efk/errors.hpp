#pragma once

#include <stdexcept>
#include <string>

namespace efk {

// Base of every error raised by the engine. The CLI maps these to exit code 3
// except ConfigError (exit 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class DivisionFailure : public Error {
public:
    using Error::Error;
};

class DegreeBoundExceeded : public Error {
public:
    using Error::Error;
};

class SampleDegenerate : public Error {
public:
    using Error::Error;
};

class PoleProximity : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

class BackendMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace efk
