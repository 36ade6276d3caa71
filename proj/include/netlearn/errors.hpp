#pragma once

#include <stdexcept>
#include <string>

namespace netlearn {

// Invalid file content or data that violates a documented invariant.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure carrying the 1-based line number it was detected on.
class ParseError : public DataError {
public:
    ParseError(int line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Instance exceeds an exact-computation cap; the caller should fall back
// to a reported "unavailable" rather than a silent heuristic.
class TooLargeError : public std::runtime_error {
public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netlearn
