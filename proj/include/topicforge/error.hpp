#pragma once

#include <stdexcept>
#include <string>

namespace topicforge {

/// Failure category. The numeric values double as CLI exit codes for the
/// first three; the rest map onto them at the process boundary.
enum class ErrorKind {
    Config = 1,
    Data = 2,
    Numeric = 3,
    Io = 4,
    Format = 5,
    Corruption = 6,
    EmptyInput = 7,
    Validation = 8,
    InvalidArgument = 9,
    Http = 10,
    DimensionMismatch = 11,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// An Error raised inside a pipeline stage, tagged with the stage name.
class StageError : public Error {
public:
    StageError(std::string stage, ErrorKind kind, const std::string& what)
        : Error(kind, "[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Process exit code for an error kind: 1 config, 2 data, 3 numeric.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace topicforge
