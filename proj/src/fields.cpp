#include "fields.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace tori {

namespace {

// Squarefree flags for n in [lo, hi).
std::vector<char> squarefree_block(u64 lo, u64 hi, const std::vector<std::uint32_t>& primes) {
    std::vector<char> sf(hi - lo, 1);
    for (u64 p : primes) {
        u64 q = p * p;
        if (q >= hi) break;
        for (u64 m = (lo + q - 1) / q * q; m < hi; m += q) sf[m - lo] = 0;
    }
    if (lo == 0 && hi > 0) sf[0] = 0;
    return sf;
}

}  // namespace

void for_each_quadratic(i64 X, const std::function<void(i64)>& emit) {
    if (X < 3) return;
    auto primes = primes_upto(static_cast<std::uint32_t>(isqrt_u64(static_cast<u64>(X))) + 1);
    const u64 block = u64{1} << 20;
    for (u64 lo = 1; lo <= static_cast<u64>(X); lo += block) {
        u64 hi = std::min<u64>(lo + block, static_cast<u64>(X) + 1);
        auto sf = squarefree_block(lo, hi, primes);
        auto sf4 = squarefree_block(lo / 4, hi / 4 + 1, primes);
        for (u64 m = lo; m < hi; ++m) {
            bool neg = false, pos = false;
            if (m % 4 == 3) neg = sf[m - lo];
            else if (m % 4 == 1) pos = m > 1 && sf[m - lo];
            else if (m % 4 == 0) {
                u64 k = m / 4;
                if (sf4[k - lo / 4]) {
                    neg = k % 4 == 1 || k % 4 == 2;
                    pos = k % 4 == 2 || k % 4 == 3;
                }
            }
            if (neg) emit(-static_cast<i64>(m));
            if (pos) emit(static_cast<i64>(m));
        }
    }
}

std::vector<FieldRecord> enum_quadratic(i64 X) {
    std::vector<FieldRecord> out;
    for_each_quadratic(X, [&](i64 d) { out.push_back(FieldRecord{2, "C2", d, QuadraticProvenance{d}}); });
    return out;
}

std::vector<CubicConductor> cyclic_cubic_conductors(i64 fmax) {
    std::vector<CubicConductor> out;
    if (fmax < 7) return out;
    auto primes = primes_upto(static_cast<std::uint32_t>(fmax));
    std::vector<std::int8_t> omega(static_cast<std::size_t>(fmax) + 1, 0);
    std::vector<char> ok(static_cast<std::size_t>(fmax) + 1, 1);
    ok[0] = 0;
    for (u64 p : primes) {
        for (u64 m = p; m <= static_cast<u64>(fmax); m += p) {
            ++omega[m];
            if (p == 3) {
                if (m % 9 != 0 || m % 27 == 0) ok[m] = 0;
            } else if (p % 3 != 1 || m % (p * p) == 0) {
                ok[m] = 0;
            }
        }
    }
    for (i64 f = 2; f <= fmax; ++f)
        if (ok[f]) out.push_back({f, 1 << (omega[f] - 1)});
    return out;
}

std::vector<FieldRecord> enum_cyclic_cubic(i64 X) {
    std::vector<FieldRecord> out;
    if (X < 1) return out;
    for (auto& c : cyclic_cubic_conductors(static_cast<i64>(isqrt_u64(static_cast<u64>(X)))))
        for (int i = 0; i < c.fields; ++i) out.push_back(FieldRecord{3, "C3", c.f * c.f, CyclicCubicProvenance{c.f, i}});
    return out;
}

std::vector<FieldRecord> enum_cubic_s3(i64 X, int sign, int workers) {
    if (sign != 1 && sign != -1) fail(Errc::Usage, "sign must be +1 or -1");
    std::vector<FieldRecord> out;
    if (X < 1) return out;
    // slice count is fixed so the merge is the same for every worker count
    const int slices = 16;
    auto parts = parallel_map<std::vector<CubicField>>(
        slices, workers, [&](int s) { return enum_cubic_s3_slice(X, sign, slices, s); });
    for (auto& c : merge_cubic_slices(std::move(parts)))
        out.push_back(FieldRecord{3, "S3-cubic", c.disc, CubicFormProvenance{c.form}});
    return out;
}

namespace {

struct QuarticSearch {
    i128 disc_max;
    i64 f_max;
    const std::vector<std::uint32_t>* primes;
    std::vector<QuarticField>* out;

    // disc4 = f^2 * D2 so far
    void dfs(std::size_t from, i128 disc4, i64 f, i64 d2, int order4_count, int two_part) {
        if (order4_count > 0 || two_part == 16) {
            int chars = (1 << order4_count) * (two_part == 8 ? 2 : two_part == 16 ? 4 : 1);
            for (int i = 0; i < chars / 2; ++i) out->push_back({static_cast<i64>(disc4), f, d2, two_part, i});
        }
        for (std::size_t k = from; k < primes->size(); ++k) {
            i64 p = (*primes)[k];
            if (disc4 * p * p > disc_max || f * p > f_max) break;
            dfs(k + 1, disc4 * p * p, f * p, d2, order4_count, two_part);
            if (p % 4 == 1 && disc4 * p * p * p <= disc_max)
                dfs(k + 1, disc4 * p * p * p, f * p, d2 * p, order4_count + 1, two_part);
        }
    }

    void run() {
        dfs(0, 1, 1, 1, 0, 1);
        if (16 <= disc_max && 4 <= f_max) dfs(0, 16, 4, 1, 0, 4);
        if (64 <= disc_max && 8 <= f_max) dfs(0, 64, 8, 1, 0, 8);
        if (2048 <= disc_max && 16 <= f_max) dfs(0, 2048, 16, 8, 0, 16);
        std::sort(out->begin(), out->end(), [](const QuarticField& a, const QuarticField& b) {
            return std::tie(a.disc, a.conductor, a.two_part, a.index) < std::tie(b.disc, b.conductor, b.two_part, b.index);
        });
    }
};

std::vector<std::uint32_t> odd_primes_upto(u64 n) {
    auto all = primes_upto(static_cast<std::uint32_t>(n));
    if (!all.empty()) all.erase(all.begin());
    return all;
}

}  // namespace

std::vector<QuarticField> cyclic_quartic_fields(i64 X) {
    std::vector<QuarticField> out;
    if (X < 1) return out;
    auto odd = odd_primes_upto(isqrt_u64(static_cast<u64>(X)) + 1);
    QuarticSearch s{X, X, &odd, &out};
    s.run();
    return out;
}

std::vector<QuarticField> cyclic_quartic_fields_by_conductor(i64 fmax) {
    std::vector<QuarticField> out;
    if (fmax < 1) return out;
    auto odd = odd_primes_upto(static_cast<u64>(fmax) + 1);
    i128 big = static_cast<i128>(fmax) * fmax * fmax;
    QuarticSearch s{big, fmax, &odd, &out};
    s.run();
    return out;
}

std::vector<FieldRecord> enum_cyclic_quartic(i64 X) {
    std::vector<FieldRecord> out;
    for (auto& q : cyclic_quartic_fields(X))
        out.push_back(FieldRecord{4, "C4", q.disc,
                                  CyclicQuarticProvenance{q.conductor, q.quadratic_disc, q.two_part, q.index}});
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

i64 parse_int(const std::string& s, const std::string& what, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (...) {
        pos = 0;
    }
    if (s.empty() || pos != s.size())
        fail(Errc::SchemaMismatch, "line " + std::to_string(line) + ": bad " + what + " '" + s + "'");
    return v;
}

}  // namespace

std::vector<FieldRecord> import_fields_csv(const std::string& path, const std::string& schema) {
    if (schema != "lmfdb-nf-v1") fail(Errc::SchemaMismatch, "unknown schema " + schema);
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open " + path);
    std::string line;
    int lineno = 0;
    bool got = false;
    while ((got = static_cast<bool>(std::getline(in, line)))) {  // '#' lines ahead of the header are provenance
        ++lineno;
        if (line.empty() || line[0] != '#') break;
    }
    if (!got) fail(Errc::SchemaMismatch, path + ": missing header");
    if (line != "label,degree,galois_label,disc,subfield_discs")
        fail(Errc::SchemaMismatch, path + ": unexpected header '" + line + "'");
    std::vector<FieldRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cols = split(line, ',');
        if (cols.size() != 5) fail(Errc::SchemaMismatch, "line " + std::to_string(lineno) + ": expected 5 columns");
        FieldRecord r;
        r.degree = static_cast<int>(parse_int(cols[1], "degree", lineno));
        r.disc = parse_int(cols[3], "disc", lineno);
        if (r.disc == 0) fail(Errc::InvalidDiscriminant, "line " + std::to_string(lineno) + ": disc is 0");
        // the factorization must reproduce the stated value
        if (r.disc_factored().value() != to_mpz(r.disc))
            fail(Errc::InvalidDiscriminant, "line " + std::to_string(lineno) + ": factorization mismatch");
        // n.r.|D|.i labels carry the signature
        auto parts = split(cols[0], '.');
        if (parts.size() == 4) {
            i64 n = parse_int(parts[0], "label degree", lineno);
            i64 real = parse_int(parts[1], "label signature", lineno);
            i64 absd = parse_int(parts[2], "label disc", lineno);
            int sign = ((n - real) / 2) % 2 ? -1 : 1;
            if (n != r.degree || absd != (r.disc < 0 ? -r.disc : r.disc) || (r.disc < 0 ? -1 : 1) != sign)
                fail(Errc::InvalidDiscriminant, "line " + std::to_string(lineno) + ": disc disagrees with label " + cols[0]);
        }
        ImportedProvenance prov{cols[0], cols[2], {}};
        if (!cols[4].empty())
            for (auto& s : split(cols[4], ';')) prov.subfield_discs.push_back(parse_int(s, "subfield disc", lineno));
        r.galois_label = "imported:" + cols[2];
        r.provenance = std::move(prov);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace tori
