#include "subtle/error.hpp"

namespace subtle {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::AlphaIsSquare: return "AlphaIsSquare";
    case ErrorKind::NonHomogeneousRelation: return "NonHomogeneousRelation";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ExceedsBound: return "ExceedsBound";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BidegreeMismatch: return "BidegreeMismatch";
    case ErrorKind::MissingRhoDesignation: return "MissingRhoDesignation";
    case ErrorKind::MissingAlpha: return "MissingAlpha";
    case ErrorKind::UnsupportedAtom: return "UnsupportedAtom";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace subtle
