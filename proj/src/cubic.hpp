#pragma once

#include <functional>
#include <tuple>
#include <vector>

#include "arith.hpp"

namespace tori {

// a x^3 + b x^2 y + c x y^2 + d y^3
struct BinaryCubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;
    i128 disc() const;
    auto key() const { return std::tie(a, b, c, d); }
    bool operator<(const BinaryCubicForm& o) const { return key() < o.key(); }
    bool operator==(const BinaryCubicForm& o) const { return key() == o.key(); }
};

// F(al*x + be*y, ga*x + de*y)
BinaryCubicForm substitute(const BinaryCubicForm& f, i64 al, i64 be, i64 ga, i64 de);

bool form_irreducible(const BinaryCubicForm& f);
// Cubic ring of f is maximal at p (only meaningful when p^2 | disc).
bool form_p_maximal(const BinaryCubicForm& f, i64 p);
bool form_maximal(const BinaryCubicForm& f);

// Canonical reduced representative of the GL2(Z)-class; the form must be irreducible.
BinaryCubicForm reduce_form(const BinaryCubicForm& f);
bool is_reduced_form(const BinaryCubicForm& f);

// x^3 + b x^2 + ac x + a^2 d, whose root generates the same field.
std::vector<i64> monic_cubic(const BinaryCubicForm& f);

struct CubicField {
    i64 disc;
    BinaryCubicForm form;
};

// S3 cubic fields with 0 < sign*disc <= X, sorted by (|disc|, form).
// The outer loop is split into independent slices; `slices`/`slice` select one.
std::vector<CubicField> enum_cubic_s3_slice(i64 X, int sign, int slices, int slice);
std::vector<CubicField> merge_cubic_slices(std::vector<std::vector<CubicField>> parts);

// Leading-coefficient range of the enumeration for the given sign; exposed for tests.
i64 cubic_a_limit(i64 X, int sign);

}  // namespace tori
