#pragma once

#include <stdexcept>
#include <string>

namespace treelift {

// Two error families, matching the CLI exit-code contract:
// bad input or unusable request -> InvalidInput (exit 2),
// numerical breakdown inside an otherwise valid computation -> NumericalError (exit 3).
// Messages start with a stable snake_case condition tag so callers and tests
// can match on the condition without parsing prose.

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

} // namespace treelift
