#pragma once

#include <stdexcept>
#include <string>

namespace tori {

// Values mirror the tori_status codes of the C API.
enum class Errc {
    Usage = 1,
    NonUnimodular,
    NotFinite,
    TrivialGroup,
    Unrecognized,
    BoundExceeded,
    SchemaMismatch,
    InvalidDiscriminant,
    MissingRole,
    NonIntegralQuotient,
    Degenerate,
    CyclicInput,
    InconsistentPair,
    WildPrime,
    Reducible,
    HeightExceeded,
    OverlappingPredicates,
    DegenerateGrid,
    Unimplemented,
    Io,
    Internal,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tori
