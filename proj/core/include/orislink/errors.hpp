#ifndef ORISLINK_ERRORS_HPP
#define ORISLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orislink {

// Common base so callers can catch everything from this library at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Zenith angle outside [0, pi/2) where a secant or slant-path formula is used.
class InvalidAngle : public Error {
public:
    using Error::Error;
};

// A scenario parameter violates a physical range constraint.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

// Config file problem. Carries file, line and key context in the message.
class ConfigError : public Error {
public:
    ConfigError(const std::string& file, int line, const std::string& key,
                const std::string& constraint)
        : Error(file + ":" + std::to_string(line) + ": key '" + key + "': " + constraint),
          file_(file), line_(line), key_(key) {}

    explicit ConfigError(const std::string& what) : Error(what), line_(0) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::string file_;
    int line_ = 0;
    std::string key_;
};

// Adaptive integration hit its subdivision limit before reaching tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// Quadrature order beyond the guarded eigen-solver range.
class OrderTooLarge : public Error {
public:
    using Error::Error;
};

// Quadratic-profile focus distance must be positive.
class InvalidFocus : public Error {
public:
    using Error::Error;
};

// Phase-profile evaluation point lies outside the reflective surface.
class OutOfSurface : public Error {
public:
    using Error::Error;
};

// Transmittance at or above 1: the repeaterless key-rate bound diverges.
class SaturatedChannel : public Error {
public:
    using Error::Error;
};

// An internal cross-check failed (e.g. Monte-Carlo vs closed form diverged).
class ValidationFailure : public Error {
public:
    using Error::Error;
};

} // namespace orislink

#endif
