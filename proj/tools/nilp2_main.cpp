// nilp2: nilpotent orbit censuses for orthogonal Lie algebras in characteristic 2.
//
// Exit codes: 0 success/verified, 1 verified mismatch, 2 invalid input,
// 3 capacity exceeded.

#include "nilp2/census.hpp"
#include "nilp2/errors.hpp"
#include "nilp2/json_io.hpp"
#include "nilp2/oracle.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using namespace nilp2;

int run_symbols(int dim, const std::string& format) {
    const auto symbols = enumerate_symbols(dim);
    for (const auto& s : symbols) {
        const SplitCounts c = splitting_counts(s);
        const FqOrbitCounts oc = fq_orbit_counts(s);
        if (format == "tsv") {
            std::cout << to_string(s) << "\t" << c.n1 << "\t" << c.n2;
            if (dim % 2 == 1)
                std::cout << "\todd=" << oc.odd;
            else
                std::cout << "\tplus=" << oc.plus << "\tminus=" << oc.minus;
            std::cout << "\n";
        } else {
            ordered_json line;
            line["symbol"] = to_string(s);
            line["n1"] = c.n1;
            line["n2"] = c.n2;
            if (dim % 2 == 1)
                line["orbits"] = {{"odd", oc.odd}};
            else
                line["orbits"] = {{"plus", oc.plus}, {"minus", oc.minus}};
            std::cout << line.dump() << "\n";
        }
    }
    return 0;
}

int run_count(const std::string& family_name, int rank, const std::string& format) {
    const GroupFamily family = group_family_from_string(family_name);
    const BigInt formula = orbit_count(family, rank);
    const BigInt census = symbol_census(family, rank);
    const bool agree = formula == census;
    if (format == "tsv") {
        std::cout << family_name << "\t" << rank << "\t" << formula << "\t" << census << "\t"
                  << (agree ? "agree" : "mismatch") << "\n";
    } else {
        ordered_json out;
        out["family"] = family_name;
        out["rank"] = rank;
        out["orbit_count"] = formula.str();
        out["symbol_census"] = census.str();
        out["agree"] = agree;
        std::cout << out.dump() << "\n";
    }
    return agree ? 0 : 1;
}

int run_weyl(const std::string& type_name, int rank) {
    const LieType type = lie_type_from_string(type_name);
    ordered_json out;
    out["type"] = type_name;
    out["rank"] = rank;
    out["irreducibles"] = weyl_irrep_count(type, rank).str();
    std::cout << out.dump() << "\n";
    return 0;
}

int run_springer(const std::string& type_name, int rank) {
    const LieType type = lie_type_from_string(type_name);
    const SpringerCheck check = springer_cardinality_check(type, rank);
    ordered_json out;
    out["type"] = type_name;
    out["rank"] = rank;
    out["weyl_irreducibles"] = check.weyl.str();
    out["orbit_local_system_pairs"] = check.local_systems.str();
    if (check.census_path) out["symbol_census_path"] = check.census_path->str();
    out["pass"] = check.pass;
    std::cout << out.dump() << "\n";
    return check.pass ? 0 : 1;
}

int run_oracle(const std::string& kind_name, int dim, unsigned degree,
               const std::string& group_name, unsigned cap_bits, unsigned jobs) {
    const SpaceKind kind = space_kind_from_string(kind_name);
    const GroupKind group = group_kind_from_string(group_name);
    const FieldSpec& field = FieldSpec::get(degree);
    const QuadSpace space = QuadSpace::standard(kind, std::size_t(dim), field);
    OracleOptions opt;
    opt.cap_bits = cap_bits;
    opt.jobs = jobs;
    const OrbitCensus census = orbit_partition(space, group, opt);
    const CensusComparison cmp = census_compare(census);
    std::cout << census_json(census, cmp).dump(2) << "\n";
    return cmp.pass ? 0 : 1;
}

int run_build(const std::string& symbol_text, unsigned degree, const std::string& mask) {
    const Symbol s = parse_symbol(symbol_text);
    const SymbolValidity v = validate_symbol(s);
    if (!v.ok) throw input_error("invalid symbol " + symbol_text + ": " + v.diagnostic);
    const FieldSpec& field = FieldSpec::get(degree);
    const auto toggles = admissible_toggle_indices(s);
    const std::string mask_bits = mask.empty() ? std::string(toggles.size(), '0') : mask;
    const FormModule mod = module_from_symbol(s, field, mask_bits);
    std::cout << module_json(mod, s, mask_bits).dump(2) << "\n";
    return 0;
}

unsigned parse_degree(int q) {
    unsigned e = 0;
    while ((1 << e) < q && e <= FieldSpec::max_degree) ++e;
    if ((1 << e) != q) throw input_error("q must be a power of 2 in 2..65536");
    return e;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilpotent orbit censuses for orthogonal Lie algebras in characteristic 2"};
    app.require_subcommand(1);

    int dim = 0, rank = 0, qarg = 2;
    std::string format = "json", family, type_name, kind_name, group_name = "O";
    std::string symbol_text, mask;
    unsigned cap_bits = 28, jobs = 1;

    auto* sym = app.add_subcommand("symbols", "enumerate valid symbols of a given dimension");
    sym->add_option("--dim", dim, "total dimension N")->required();
    sym->add_option("--format", format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));

    auto* cnt = app.add_subcommand("count", "orbit count formula vs symbol census");
    cnt->add_option("--family", family, "B|Dplus|Dminus|SOplus")->required();
    cnt->add_option("--rank", rank, "rank n")->required();
    cnt->add_option("--format", format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));

    auto* weyl = app.add_subcommand("weyl", "Weyl group irreducible representation count");
    weyl->add_option("--type", type_name, "B|C|D")->required();
    weyl->add_option("--rank", rank, "rank r")->required();

    auto* spr = app.add_subcommand("springer-check", "cardinality check of the Springer bijection");
    spr->add_option("--type", type_name, "B|C|D")->required();
    spr->add_option("--rank", rank, "rank r")->required();

    auto* orc = app.add_subcommand("oracle", "brute-force orbit census over a concrete F_q");
    orc->add_option("--kind", kind_name, "odd|plus|minus")->required();
    orc->add_option("--dim", dim, "space dimension N")->required();
    orc->add_option("--q", qarg, "field size (power of 2)");
    orc->add_option("--group", group_name, "O|SO");
    orc->add_option("--cap", cap_bits, "state budget in bits (default 28)");
    orc->add_option("--jobs", jobs, "worker threads for enumeration (default 1)");

    auto* bld = app.add_subcommand("build", "synthesize a module from a symbol");
    bld->add_option("--symbol", symbol_text, "symbol, e.g. (3)_2^2(1)_1")->required();
    bld->add_option("--q", qarg, "field size (power of 2)");
    bld->add_option("--mask", mask, "delta toggle bits, one per admissible index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sym->parsed()) return run_symbols(dim, format);
        if (cnt->parsed()) return run_count(family, rank, format);
        if (weyl->parsed()) return run_weyl(type_name, rank);
        if (spr->parsed()) return run_springer(type_name, rank);
        if (orc->parsed()) return run_oracle(kind_name, dim, parse_degree(qarg), group_name,
                                             cap_bits, jobs);
        if (bld->parsed()) return run_build(symbol_text, parse_degree(qarg), mask);
    } catch (const capacity_error& err) {
        std::cerr << "capacity: " << err.what() << "\n";
        return 3;
    } catch (const input_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 4;
    }
    return 2;
}
