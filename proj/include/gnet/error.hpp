#pragma once

#include <stdexcept>
#include <string>

namespace gnet {

enum class ErrorKind {
    CoincidentPoints,
    AntipodalPoints,
    OutOfChart,
    MismatchedBasePoint,
    SelfIntersectingPolygon,
    UnknownVertex,
    DegreeTooSmall,
    UnsupportedSurface,
    NetDegenerate,
    NetInvariantViolated,
    NonAdjacentEdges,
    NotClosed,
    NotEssentiallySimple,
    PreconditionViolated,
    ConditionsNotMet,
    StartOutsideRegion,
    VertexCollision,
    CollinearInput,
    NoFermatPoint,
    ParamConstraintViolated,
    BisectionNoSignChange,
    SchemaError,
    Usage,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}
    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace gnet
