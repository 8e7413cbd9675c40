#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crocker {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration left the configured magnitude bound or produced a non-finite
/// component. Carries the 1-based step index at which it happened.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class TargetTooLargeError : public Error {
public:
    using Error::Error;
};

class ComplexTooLargeError : public Error {
public:
    using Error::Error;
};

class DegenerateRangeError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class ZeroVarianceError : public Error {
public:
    using Error::Error;
};

/// Every parameter value of a sweep diverged.
class AllFailedError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace crocker
