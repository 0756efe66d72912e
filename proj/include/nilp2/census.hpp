#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace nilp2 {

using BigInt = boost::multiprecision::cpp_int;

/// Number of partitions of k (Euler pentagonal recurrence, memoized).
BigInt partition_count(int k);
/// Number of ordered pairs of partitions (alpha, beta) with |alpha|+|beta| = k.
BigInt bipartition_count(int k);

enum class GroupFamily { B, Dplus, Dminus, SOplus };
const char* to_string(GroupFamily f);
GroupFamily group_family_from_string(const std::string& s);

/// Closed-form nilpotent orbit count:
///   B(n):      p_2(n)
///   Dplus(n):  p_2(n)/2 (n odd),  (p_2(n) + p(n/2))/2 (n even)
///   Dminus(n): p_2(n)/2 (n odd),  (p_2(n) - p(n/2))/2 (n even)
///   SOplus(n): p_2(n)/2 (n odd),  (p_2(n) + 3 p(n/2))/2 (n even)
/// All divisions are checked exact.
BigInt orbit_count(GroupFamily family, int n);

/// The same count obtained by summing per-symbol orbit multiplicities over
/// all valid symbols of the family's dimension.
BigInt symbol_census(GroupFamily family, int n);

enum class LieType { B, C, D };
const char* to_string(LieType t);
LieType lie_type_from_string(const std::string& s);

/// Number of irreducible Weyl group representations (bipartition counts;
/// type D doubles the degenerate unordered pairs).
BigInt weyl_irrep_count(LieType type, int r);

/// Number of (nilpotent orbit, irreducible equivariant local system) pairs,
/// obtained as the large-q F_q orbit count.  Defined for types B and D.
BigInt local_system_census(LieType type, int n);

struct SpringerCheck {
    BigInt weyl;
    BigInt local_systems;
    std::optional<BigInt> census_path; // independent symbol-census recount (B, D)
    bool pass = false;
};

/// Cardinality form of the Springer correspondence: |W^| = |N_ad|.
SpringerCheck springer_cardinality_check(LieType type, int r);

} // namespace nilp2
