#ifndef BRINKMAN_ERRORS_HPP
#define BRINKMAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brinkman {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeshError : Error {
    using Error::Error;
};

// Raised while reading an MSH stream; carries the 1-based line number.
struct MshParseError : MeshError {
    MshParseError(std::size_t line, const std::string& message)
        : MeshError("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_ = 0;
};

struct SpaceError : Error {
    using Error::Error;
};

struct PenaltyError : Error {
    using Error::Error;
};

struct AssemblyError : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct NewtonError : SolverError {
    using SolverError::SolverError;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace brinkman

#endif
