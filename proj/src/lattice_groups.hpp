#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tori {

// 3x3 integer matrix, row-major.
struct IntMatrix {
    std::array<std::int64_t, 9> e{};

    static IntMatrix identity();
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);
    std::int64_t operator()(int r, int c) const { return e[3 * r + c]; }
    std::int64_t& operator()(int r, int c) { return e[3 * r + c]; }
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return e == o.e; }
    bool operator<(const IntMatrix& o) const { return e < o.e; }
    std::int64_t det() const;
    std::int64_t trace() const { return e[0] + e[4] + e[8]; }
    std::int64_t max_abs() const;
    // Inverse of a unimodular matrix (adjugate times det).
    IntMatrix inverse() const;
    std::string str() const;
};

// Rank over Q by fraction-free elimination; rows x cols <= 3 x 6.
int rank_q(const std::vector<std::vector<std::int64_t>>& m);

// Elementary divisors of an integer matrix (nonzero ones, ascending by divisibility).
std::vector<std::int64_t> smith_invariants(const std::vector<std::vector<std::int64_t>>& m);

struct ConjugacyClass {
    IntMatrix representative;
    std::vector<IntMatrix> members;  // sorted
    int rank_defect = 0;             // rank(h - I) over Q
    int element_order = 1;
};

class MatrixGroup {
public:
    MatrixGroup() = default;

    const std::vector<IntMatrix>& elements() const { return elements_; }
    const std::vector<IntMatrix>& generators() const { return gens_; }
    std::size_t order() const { return elements_.size(); }
    int index_of(const IntMatrix& m) const;  // -1 if absent
    int element_order(const IntMatrix& m) const;
    int exponent() const;
    bool abelian() const;
    std::size_t center_size() const;

    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    friend MatrixGroup generate_group(const std::vector<IntMatrix>& gens);

private:
    std::vector<IntMatrix> elements_;  // sorted row-major
    std::vector<IntMatrix> gens_;
    std::string label_;
};

constexpr std::size_t kMaxFiniteOrder = 48;

// Errors: NonUnimodular, NotFinite.
MatrixGroup generate_group(const std::vector<IntMatrix>& gens);

std::vector<ConjugacyClass> conjugacy_classes(const MatrixGroup& g);

// Power-map orbits of conjugacy classes; each orbit lists class indices.
std::vector<std::vector<int>> power_map_orbits(const MatrixGroup& g, const std::vector<ConjugacyClass>& classes,
                                               bool reverse_residues = false);

int a_invariant(const MatrixGroup& g);  // TrivialGroup on |H| = 1
int b_invariant(const MatrixGroup& g);

// Abstract type label ("C2", "C2xC2", "D4", "S4xC2", ...). Unrecognized otherwise.
std::string iso_type(const MatrixGroup& g);

// Invariants certifying that catalog entries are pairwise non-conjugate.
struct GroupFingerprint {
    std::size_t order = 0;
    std::string iso;
    int a = 0, b = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> trace_det;  // sorted multiset
    int fixed_dim = 0;
    std::vector<std::int64_t> coinvariant_torsion;
    std::vector<std::vector<std::int64_t>> element_snf;  // sorted multiset
    std::vector<std::vector<std::int64_t>> pair_snf;     // sorted multiset
    bool operator==(const GroupFingerprint& o) const;
    bool operator<(const GroupFingerprint& o) const;
};

GroupFingerprint fingerprint(const MatrixGroup& g);

struct CatalogEntry {
    std::string label;  // "H_{12,b}"; the trivial group is "H_{1,a}"
    std::vector<IntMatrix> generators;
    MatrixGroup group;
    std::string iso;
};

// Trivial group first, then the 72 nontrivial classes in table order.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& label);

// "H_{4,e}" <-> "H_4_e".
std::string label_to_cli(const std::string& label);
std::string label_from_cli(const std::string& s);

}  // namespace tori
