#include "gnet/error.hpp"

namespace gnet {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::AntipodalPoints: return "AntipodalPoints";
    case ErrorKind::OutOfChart: return "OutOfChart";
    case ErrorKind::MismatchedBasePoint: return "MismatchedBasePoint";
    case ErrorKind::SelfIntersectingPolygon: return "SelfIntersectingPolygon";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::UnsupportedSurface: return "UnsupportedSurface";
    case ErrorKind::NetDegenerate: return "NetDegenerate";
    case ErrorKind::NetInvariantViolated: return "NetInvariantViolated";
    case ErrorKind::NonAdjacentEdges: return "NonAdjacentEdges";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotEssentiallySimple: return "NotEssentiallySimple";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ConditionsNotMet: return "ConditionsNotMet";
    case ErrorKind::StartOutsideRegion: return "StartOutsideRegion";
    case ErrorKind::VertexCollision: return "VertexCollision";
    case ErrorKind::CollinearInput: return "CollinearInput";
    case ErrorKind::NoFermatPoint: return "NoFermatPoint";
    case ErrorKind::ParamConstraintViolated: return "ParamConstraintViolated";
    case ErrorKind::BisectionNoSignChange: return "BisectionNoSignChange";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::Usage: return "Usage";
    }
    return "Error";
}

} // namespace gnet
