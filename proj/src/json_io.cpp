#include "nilp2/json_io.hpp"

#include <map>
#include <sstream>

namespace nilp2 {

namespace {
std::string hex_bits(std::uint32_t bits) {
    std::ostringstream out;
    out << "0x" << std::hex << bits;
    return out.str();
}
} // namespace

ordered_json matrix_json(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(hex_bits(m(i, j)));
        rows.push_back(std::move(row));
    }
    ordered_json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["data"] = std::move(rows);
    return out;
}

ordered_json module_json(const FormModule& m, const Symbol& s, const std::string& mask) {
    ordered_json out;
    out["field"] = m.space().field().tag();
    out["dim"] = m.space().dim();
    out["symbol"] = to_string(s);
    out["mask"] = mask;
    out["form_upper"] = matrix_json(m.space().upper());
    out["gram"] = matrix_json(m.space().gram());
    out["endomorphism"] = matrix_json(m.endo());
    out["jordan_type"] = m.jordan().parts;
    out["round_trip"] = to_string(symbol_of(m)) == to_string(s);
    return out;
}

ordered_json census_json(const OrbitCensus& census, const CensusComparison& cmp) {
    ordered_json out;
    out["kind"] = to_string(census.kind);
    out["N"] = census.dim;
    out["q"] = census.field->order();
    out["field"] = census.field->tag();
    out["group"] = to_string(census.group);

    // group records by symbol, symbols in enumeration order
    std::map<std::string, std::vector<long long>> sizes;
    std::map<std::string, int> splits;
    for (const auto& o : census.orbits) {
        sizes[to_string(o.symbol)].push_back(o.size);
        if (o.so_split) ++splits[to_string(o.symbol)];
    }
    ordered_json arr = ordered_json::array();
    for (const auto& s : enumerate_symbols(int(census.dim))) {
        const std::string key = to_string(s);
        auto it = sizes.find(key);
        if (it == sizes.end()) continue;
        ordered_json rec;
        rec["symbol"] = key;
        rec["orbit_sizes"] = it->second;
        if (splits.count(key)) rec["so_split"] = true;
        arr.push_back(std::move(rec));
    }
    out["orbits"] = std::move(arr);
    out["totals"] = {{"nilpotents", census.nilpotent_count}, {"orbits", census.orbits.size()}};
    out["verdict"] = cmp.pass ? "pass" : "mismatch";
    if (!cmp.mismatches.empty()) out["mismatches"] = cmp.mismatches;
    return out;
}

} // namespace nilp2
