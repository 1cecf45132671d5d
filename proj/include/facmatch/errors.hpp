#pragma once

#include <stdexcept>
#include <string>

namespace facmatch {

/// Bad run configuration: missing files, inconsistent flags. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Remote endpoint failures (LLM validator, embedding encoder). CLI exit code 3.
class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace facmatch
