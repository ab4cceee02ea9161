#include "error.hpp"

namespace tori {

const char* errc_name(Errc e) {
    switch (e) {
        case Errc::Usage: return "UsageError";
        case Errc::NonUnimodular: return "NonUnimodular";
        case Errc::NotFinite: return "NotFinite";
        case Errc::TrivialGroup: return "TrivialGroup";
        case Errc::Unrecognized: return "Unrecognized";
        case Errc::BoundExceeded: return "BoundExceeded";
        case Errc::SchemaMismatch: return "SchemaMismatch";
        case Errc::InvalidDiscriminant: return "InvalidDiscriminant";
        case Errc::MissingRole: return "MissingRole";
        case Errc::NonIntegralQuotient: return "NonIntegralQuotient";
        case Errc::Degenerate: return "Degenerate";
        case Errc::CyclicInput: return "CyclicInput";
        case Errc::InconsistentPair: return "InconsistentPair";
        case Errc::WildPrime: return "WildPrime";
        case Errc::Reducible: return "Reducible";
        case Errc::HeightExceeded: return "HeightExceeded";
        case Errc::OverlappingPredicates: return "OverlappingPredicates";
        case Errc::DegenerateGrid: return "DegenerateGrid";
        case Errc::Unimplemented: return "Unimplemented";
        case Errc::Io: return "IoError";
        case Errc::Internal: return "InternalError";
    }
    return "Unknown";
}

}  // namespace tori
