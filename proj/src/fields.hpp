#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "cubic.hpp"
#include "quadform.hpp"

namespace tori {

struct QuadraticProvenance {
    i64 d;
};

struct CyclicCubicProvenance {
    i64 f;
    int index;  // 0 .. 2^(omega(f)-1) - 1
};

struct CubicFormProvenance {
    BinaryCubicForm form;
};

// One conjugate pair of primitive quartic characters, described prime by prime.
struct CyclicQuarticProvenance {
    i64 conductor;        // f(chi)
    i64 quadratic_disc;   // D2 = f(chi^2)
    int two_part;         // conductor of the 2-component: 1, 4, 8 or 16
    int index;            // which field among those sharing this ramification shape
};

struct ImportedProvenance {
    std::string label;
    std::string galois_label;
    std::vector<i64> subfield_discs;
};

using Provenance =
    std::variant<QuadraticProvenance, CyclicCubicProvenance, CubicFormProvenance, CyclicQuarticProvenance, ImportedProvenance>;

struct FieldRecord {
    int degree = 0;
    std::string galois_label;  // C2, C3, S3-cubic, C4, ..., imported:<label>
    i64 disc = 0;
    Provenance provenance;

    FactoredInt disc_factored() const { return FactoredInt(disc); }
};

// Fundamental discriminants with |d| <= X in order (|d|, d), streamed blockwise.
void for_each_quadratic(i64 X, const std::function<void(i64)>& emit);
std::vector<FieldRecord> enum_quadratic(i64 X);

// Admissible cyclic cubic conductors f <= fmax with their field counts 2^(omega-1).
struct CubicConductor {
    i64 f;
    int fields;
};
std::vector<CubicConductor> cyclic_cubic_conductors(i64 fmax);
std::vector<FieldRecord> enum_cyclic_cubic(i64 X);

// sign = +1 or -1. Output does not depend on `workers`.
std::vector<FieldRecord> enum_cubic_s3(i64 X, int sign, int workers = 1);

// Compact C4 data: one entry per field, sorted by (D4, conductor, index).
struct QuarticField {
    i64 disc;
    i64 conductor;
    i64 quadratic_disc;
    int two_part;
    int index;
};
std::vector<QuarticField> cyclic_quartic_fields(i64 X);
// Same records, selected by conductor f(chi) <= fmax instead of disc.
std::vector<QuarticField> cyclic_quartic_fields_by_conductor(i64 fmax);
std::vector<FieldRecord> enum_cyclic_quartic(i64 X);

// Schema lmfdb-nf-v1. Errors: SchemaMismatch, InvalidDiscriminant, Io.
std::vector<FieldRecord> import_fields_csv(const std::string& path, const std::string& schema = "lmfdb-nf-v1");

}  // namespace tori
