#include "lattice_groups.hpp"

#include "error.hpp"

namespace tori {

namespace {

using M = IntMatrix;

struct RawEntry {
    const char* label;
    std::vector<IntMatrix> gens;
};

// Generator matrices of the 72 nontrivial classes, in table order.
const std::vector<RawEntry>& raw_entries() {
    static const std::vector<RawEntry> raw = {
        {"H_{2,a}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{2,b}", {M::from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}},
        {"H_{2,c}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{2,d}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{2,e}", {M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{3,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, -1}})}},
        {"H_{3,b}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})}},
        {"H_{4,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}})}},
        {"H_{4,b}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 0}})}},
        {"H_{4,c}", {M::from_rows({{1, 0, 1}, {0, 0, -1}, {0, 1, 0}})}},
        {"H_{4,d}", {M::from_rows({{-1, 0, -1}, {0, 0, 1}, {0, -1, 0}})}},
        {"H_{4,e}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{4,f}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})}},
        {"H_{4,g}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})}},
        {"H_{4,h}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{4,i}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{4,j}", {M::from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{4,k}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{4,l}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {1, 0, -1}, {-1, -1, 0}})}},
        {"H_{4,m}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{1, 0, 0}, {-1, 0, 1}, {1, 1, 0}})}},
        {"H_{4,n}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 1, -1}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{4,o}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{1, -1, 1}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{6,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 1}})}},
        {"H_{6,b}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, -1}})}},
        {"H_{6,c}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 1}})}},
        {"H_{6,d}", {M::from_rows({{0, -1, 0}, {0, 0, -1}, {-1, 0, 0}})}},
        {"H_{6,e}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, -1}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{6,f}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, -1}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{6,g}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, -1}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{6,h}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, -1}}), M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{6,i}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}})}},
        {"H_{6,j}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})}},
        {"H_{8,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,b}", {M::from_rows({{1, 0, 1}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,c}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,d}", {M::from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,e}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {1, 0, -1}, {-1, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,f}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 1, -1}, {0, 0, -1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{8,g}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{8,h}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{8,i}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{8,j}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 0}}), M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{8,k}", {M::from_rows({{1, 0, 1}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{8,l}", {M::from_rows({{1, 0, 1}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{8,m}", {M::from_rows({{-1, 0, -1}, {0, 0, 1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{8,n}", {M::from_rows({{-1, 0, -1}, {0, 0, 1}, {0, -1, 0}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{12,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{12,b}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 1}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{12,c}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 1}}), M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{12,d}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, -1}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{12,e}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, -1}}), M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{12,f}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 1}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{12,g}", {M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, -1, 1}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{12,h}", {M::from_rows({{0, -1, 0}, {0, 0, -1}, {-1, 0, 0}}), M::from_rows({{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}})}},
        {"H_{12,i}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}})}},
        {"H_{12,j}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{0, -1, 1}, {0, -1, 0}, {1, -1, 0}})}},
        {"H_{12,k}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{16,a}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{16,b}", {M::from_rows({{1, 0, 1}, {0, 0, -1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{24,a}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{24,b}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{0, -1, 1}, {0, -1, 0}, {1, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{24,c}", {M::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), M::from_rows({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{24,d}", {M::from_rows({{1, 0, 0}, {0, 0, -1}, {0, 1, 1}}), M::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{24,e}", {M::from_rows({{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{24,f}", {M::from_rows({{0, 0, -1}, {0, -1, 0}, {1, 0, 0}}), M::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{24,g}", {M::from_rows({{0, -1, 0}, {1, 1, 1}, {-1, 0, 0}}), M::from_rows({{-1, -1, 0}, {0, 1, 0}, {0, 0, -1}})}},
        {"H_{24,h}", {M::from_rows({{0, 1, 0}, {-1, -1, -1}, {1, 0, 0}}), M::from_rows({{1, 1, 0}, {0, -1, 0}, {0, 0, 1}})}},
        {"H_{24,i}", {M::from_rows({{1, 1, 0}, {-2, -1, -1}, {0, 0, 1}}), M::from_rows({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}})}},
        {"H_{24,j}", {M::from_rows({{-1, -1, 0}, {2, 1, 1}, {0, 0, -1}}), M::from_rows({{1, 1, 1}, {0, 0, -1}, {0, -1, 0}})}},
        {"H_{48,a}", {M::from_rows({{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}), M::from_rows({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{48,b}", {M::from_rows({{0, -1, 0}, {1, 1, 1}, {-1, 0, 0}}), M::from_rows({{-1, -1, 0}, {0, 1, 0}, {0, 0, -1}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        {"H_{48,c}", {M::from_rows({{1, 1, 0}, {-2, -1, -1}, {0, 0, 1}}), M::from_rows({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}}), M::from_rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
    };
    return raw;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        CatalogEntry trivial;
        trivial.label = "H_{1,a}";
        trivial.group = generate_group({});
        trivial.iso = iso_type(trivial.group);
        out.push_back(std::move(trivial));
        for (auto& r : raw_entries()) {
            CatalogEntry e;
            e.label = r.label;
            e.generators = r.gens;
            e.group = generate_group(r.gens);
            for (auto& h : e.group.elements())
                if (h.max_abs() > 2) fail(Errc::Internal, e.label + " has an element with entries above 2");
            e.group.set_label(e.label);
            e.iso = iso_type(e.group);
            out.push_back(std::move(e));
        }
        return out;
    }();
    return entries;
}

}  // namespace tori
