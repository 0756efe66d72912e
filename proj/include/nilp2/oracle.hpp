#pragma once

#include "nilp2/formmodule.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nilp2 {

enum class GroupKind { O, SO };
const char* to_string(GroupKind g);
GroupKind group_kind_from_string(const std::string& s);

struct OracleOptions {
    unsigned cap_bits = 28; // refuse enumerations with q^dim(o(V)) > 2^cap_bits
    unsigned jobs = 1;      // worker threads for the enumeration phase
};

struct OrbitRecord {
    Mat representative;
    long long size = 0;
    Symbol symbol;
    bool so_split = false; // this record is one half of a split O-orbit
    unsigned parity = 0;   // Dickson parity of the half (SO census of split orbits)
};

struct OrbitCensus {
    SpaceKind kind;
    std::size_t dim = 0;
    const FieldSpec* field = nullptr;
    GroupKind group = GroupKind::O;
    long long nilpotent_count = 0;
    std::vector<OrbitRecord> orbits; // representative packed order, deterministic
};

/// Stream every nilpotent element of o(V)(F_q) in lexicographic coefficient
/// order over the deterministic o(V) basis (zero matrix first).
void visit_nilpotents(const QuadSpace& V, const OracleOptions& opt,
                      const std::function<void(const Mat&)>& fn);
std::vector<Mat> enumerate_nilpotents(const QuadSpace& V, const OracleOptions& opt = {});

/// Full orbit census of the nilpotent cone under O(V) or SO(V).
/// Generators: the fully enumerated orthogonal group for dim <= 4 (where
/// transvections need not generate), all transvections for dim >= 5.
/// SO-orbits come from a parity double cover; for odd dimension SO = O.
OrbitCensus orbit_partition(const QuadSpace& V, GroupKind group, const OracleOptions& opt = {});

/// True iff x and y are conjugate under the chosen group.
bool conjugacy_probe(const QuadSpace& V, const Mat& x, const Mat& y, GroupKind group,
                     const OracleOptions& opt = {});

/// Every element of O(V), by isometry extension over all candidate images of
/// the basis.  Feasible only in small dimension; guarded by a capacity check.
std::vector<Mat> orthogonal_group_elements(const QuadSpace& V);

struct CensusComparison {
    bool pass = true;
    std::vector<std::string> mismatches;
    std::string summary;
};

/// Compare a census against the per-symbol orbit multiplicities predicted by
/// the splitting counts, and the total against the closed-form count.
CensusComparison census_compare(const OrbitCensus& census);

} // namespace nilp2
