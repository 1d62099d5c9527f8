#pragma once

#include <stdexcept>
#include <string>

namespace ccma {

// Malformed input or a broken structural invariant (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure in line-oriented input; carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(int line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Matrix inversion failure; carries the rank reached by elimination.
class SingularError : public std::runtime_error {
public:
    SingularError(int rank, const std::string& what)
        : std::runtime_error(what + " (rank " + std::to_string(rank) + ")"), rank_(rank) {}
    int rank() const { return rank_; }

private:
    int rank_;
};

// Filesystem trouble (CLI exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ccma
