#include "nilp2/census.hpp"

#include "nilp2/errors.hpp"
#include "nilp2/symbol.hpp"

#include <mutex>
#include <vector>

namespace nilp2 {

namespace {

std::mutex table_mutex;
std::vector<BigInt> p_table{1};  // p(0) = 1
std::vector<BigInt> p2_table{1}; // p_2(0) = 1

void extend_tables(int k) {
    for (int n = int(p_table.size()); n <= k; ++n) {
        BigInt s = 0;
        for (int j = 1;; ++j) {
            const int g1 = j * (3 * j - 1) / 2;
            const int g2 = j * (3 * j + 1) / 2;
            if (g1 > n && g2 > n) break;
            const int sign = j % 2 == 1 ? 1 : -1;
            if (g1 <= n) s += sign * p_table[n - g1];
            if (g2 <= n) s += sign * p_table[n - g2];
        }
        p_table.push_back(s);
    }
    for (int n = int(p2_table.size()); n <= k; ++n) {
        BigInt s = 0;
        for (int j = 0; j <= n; ++j) s += p_table[j] * p_table[n - j];
        p2_table.push_back(s);
    }
}

BigInt exact_half(const BigInt& x, const char* what) {
    if (x % 2 != 0) throw construction_error(std::string("non-integral count in ") + what);
    return x / 2;
}

} // namespace

BigInt partition_count(int k) {
    if (k < 0) throw input_error("partition count of a negative integer");
    std::lock_guard<std::mutex> lock(table_mutex);
    extend_tables(k);
    return p_table[k];
}

BigInt bipartition_count(int k) {
    if (k < 0) throw input_error("bipartition count of a negative integer");
    std::lock_guard<std::mutex> lock(table_mutex);
    extend_tables(k);
    return p2_table[k];
}

const char* to_string(GroupFamily f) {
    switch (f) {
    case GroupFamily::B: return "B";
    case GroupFamily::Dplus: return "Dplus";
    case GroupFamily::Dminus: return "Dminus";
    case GroupFamily::SOplus: return "SOplus";
    }
    return "?";
}

GroupFamily group_family_from_string(const std::string& s) {
    if (s == "B") return GroupFamily::B;
    if (s == "Dplus") return GroupFamily::Dplus;
    if (s == "Dminus") return GroupFamily::Dminus;
    if (s == "SOplus") return GroupFamily::SOplus;
    throw input_error("unknown family '" + s + "' (expected B|Dplus|Dminus|SOplus)");
}

BigInt orbit_count(GroupFamily family, int n) {
    if (n < 1) throw input_error("orbit count needs rank n >= 1");
    const BigInt p2 = bipartition_count(n);
    const bool even = n % 2 == 0;
    const BigInt ph = even ? partition_count(n / 2) : BigInt(0);
    switch (family) {
    case GroupFamily::B: return p2;
    case GroupFamily::Dplus: return exact_half(p2 + ph, "Dplus");
    case GroupFamily::Dminus: return exact_half(p2 - ph, "Dminus");
    case GroupFamily::SOplus: return exact_half(p2 + 3 * ph, "SOplus");
    }
    throw input_error("bad family");
}

BigInt symbol_census(GroupFamily family, int n) {
    if (n < 1) throw input_error("symbol census needs rank n >= 1");
    const int N = family == GroupFamily::B ? 2 * n + 1 : 2 * n;
    BigInt total = 0;
    for (const auto& s : enumerate_symbols(N)) {
        const FqOrbitCounts c = fq_orbit_counts(s);
        switch (family) {
        case GroupFamily::B: total += c.odd; break;
        case GroupFamily::Dplus: total += c.plus; break;
        case GroupFamily::Dminus: total += c.minus; break;
        case GroupFamily::SOplus:
            // each all-chi-half O+ orbit splits into two SO orbits
            total += all_chi_half(s) ? 2 : c.plus;
            break;
        }
    }
    return total;
}

const char* to_string(LieType t) {
    switch (t) {
    case LieType::B: return "B";
    case LieType::C: return "C";
    case LieType::D: return "D";
    }
    return "?";
}

LieType lie_type_from_string(const std::string& s) {
    if (s == "B") return LieType::B;
    if (s == "C") return LieType::C;
    if (s == "D") return LieType::D;
    throw input_error("unknown Lie type '" + s + "' (expected B|C|D)");
}

BigInt weyl_irrep_count(LieType type, int r) {
    if (r < 1) throw input_error("Weyl irreducible count needs rank r >= 1");
    const BigInt p2 = bipartition_count(r);
    switch (type) {
    case LieType::B:
    case LieType::C: return p2;
    case LieType::D:
        if (r % 2 == 1) return exact_half(p2, "Weyl D");
        return exact_half(p2 + 3 * partition_count(r / 2), "Weyl D");
    }
    throw input_error("bad Lie type");
}

BigInt local_system_census(LieType type, int n) {
    switch (type) {
    case LieType::B: return orbit_count(GroupFamily::B, n);
    case LieType::D: return orbit_count(GroupFamily::SOplus, n);
    case LieType::C:
        throw input_error("local system census is defined for types B and D");
    }
    throw input_error("bad Lie type");
}

SpringerCheck springer_cardinality_check(LieType type, int r) {
    if (r < 1) throw input_error("Springer check needs rank r >= 1");
    SpringerCheck out;
    out.weyl = weyl_irrep_count(type, r);
    switch (type) {
    case LieType::B:
        out.local_systems = local_system_census(LieType::B, r);
        out.census_path = symbol_census(GroupFamily::B, r);
        break;
    case LieType::C:
        // the symplectic orbit count coincides with the type-B count
        out.local_systems = local_system_census(LieType::B, r);
        break;
    case LieType::D:
        out.local_systems = local_system_census(LieType::D, r);
        out.census_path = symbol_census(GroupFamily::SOplus, r);
        break;
    }
    out.pass = out.weyl == out.local_systems &&
               (!out.census_path || *out.census_path == out.local_systems);
    return out;
}

} // namespace nilp2
