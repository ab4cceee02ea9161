#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace tori {

// ax^2 + bxy + cy^2 with b^2 - 4ac = D.
struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;
    std::int64_t disc() const { return b * b - 4 * a * c; }
    bool operator<(const QuadForm& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

QuadForm principal_form(std::int64_t d);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm inverse(const QuadForm& f);
// Reduced representative: unique for d < 0, some form on the cycle for d > 0.
QuadForm reduce(const QuadForm& f);
bool is_reduced(const QuadForm& f);
// One rho step for indefinite forms.
QuadForm rho(const QuadForm& f);

struct ClassGroupData {
    std::int64_t d = 0;
    std::int64_t h = 0;                    // narrow for d > 0
    std::map<int, std::int64_t> p_torsion;  // p -> h_p for p in {2, 3}
};

constexpr std::int64_t kDefaultClassGroupBound = 100000000;

// Errors: InvalidDiscriminant if d is not fundamental; BoundExceeded.
ClassGroupData quad_class_group(std::int64_t d, std::int64_t bound = kDefaultClassGroupBound);

// Class representatives (one reduced form per class), principal class first.
std::vector<QuadForm> class_representatives(std::int64_t d);

}  // namespace tori
