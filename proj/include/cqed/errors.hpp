#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

/// Precondition violated by the caller (bad dimension, bad label, invalid
/// density matrix, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested problem exceeds the dense-matrix capacity limits, or a
/// truncation is too aggressive to trust.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A reservoir integral diverges for the given spectral density / temperature.
class IntegrabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration file problem; carries the offending key and line (0 = n/a).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key, int line, const std::string& what)
        : std::runtime_error(format(key, line, what)), key_(key), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& what)
    {
        std::string s = "config";
        if (line > 0) s += " line " + std::to_string(line);
        if (!key.empty()) s += " key '" + key + "'";
        return s + ": " + what;
    }

    std::string key_;
    int line_;
};

} // namespace cqed
