#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egoref {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Input could not be parsed; `position` is a byte offset or line number,
// `unit` says which.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t position, std::string unit = "offset")
        : Error(message + " (" + unit + " " + std::to_string(position) + ")"),
          position(position),
          unit(std::move(unit)) {}

    std::size_t position;
    std::string unit;
};

// A size/cost guard was exceeded.
class GuardError : public Error {
  public:
    using Error::Error;
};

}  // namespace egoref
