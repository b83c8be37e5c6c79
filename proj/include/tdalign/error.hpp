#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tdalign {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input document does not conform to a JSON schema. The message starts
// with the JSON path of the offending element, e.g. "$.utterances[2].text".
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A scoring matrix would exceed the configured cell budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// A metric whose denominator is zero.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace tdalign
