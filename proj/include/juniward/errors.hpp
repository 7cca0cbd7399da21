#pragma once

#include <stdexcept>
#include <string>

namespace juniward {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that is well-formed but violates a contract (bad dimensions,
/// out-of-range values, invalid parameters).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A file that could be read but does not parse. The message carries the
/// offending field or position.
class FormatError : public ValidationError {
public:
    FormatError(const std::string& location, const std::string& what)
        : ValidationError(location + ": " + what), location_(location), detail_(what) {}

    const std::string& location() const noexcept { return location_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string location_;
    std::string detail_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace juniward
