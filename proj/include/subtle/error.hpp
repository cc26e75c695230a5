#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subtle {

enum class ErrorKind {
    AlphaIsSquare,
    NonHomogeneousRelation,
    NameClash,
    UnknownGenerator,
    ZeroElement,
    ExceedsBound,
    BoundTooSmall,
    ResourceLimit,
    ShapeMismatch,
    BidegreeMismatch,
    MissingRhoDesignation,
    MissingAlpha,
    UnsupportedAtom,
    OutOfRange,
    ParseError,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// All library failures surface as this exception; `kind()` is stable and
/// is what tests and the CLI dispatch on, the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace subtle
