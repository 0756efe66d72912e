#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilp2/errors.hpp"
#include "nilp2/oracle.hpp"

#include <algorithm>
#include <map>

using namespace nilp2;

namespace {

QuadSpace space(SpaceKind kind, std::size_t n, unsigned e = 1) {
    return QuadSpace::standard(kind, n, FieldSpec::get(e));
}

std::vector<long long> sizes(const OrbitCensus& c) {
    std::vector<long long> out;
    for (const auto& o : c.orbits) out.push_back(o.size);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, std::vector<long long>> by_symbol(const OrbitCensus& c) {
    std::map<std::string, std::vector<long long>> out;
    for (const auto& o : c.orbits) out[to_string(o.symbol)].push_back(o.size);
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
}

} // namespace

TEST_CASE("nilpotent enumeration of o_3(F_2)") {
    QuadSpace v = space(SpaceKind::odd, 3);
    auto nil = enumerate_nilpotents(v);
    CHECK(nil.size() == 4);
    CHECK(nil.front().is_zero()); // zero matrix first
    for (const auto& m : nil) {
        CHECK(is_nilpotent(m));
        CHECK(v.in_lie_algebra(m));
    }
}

TEST_CASE("o_3(F_2): two orbits of sizes 1 and 3") {
    auto census = orbit_partition(space(SpaceKind::odd, 3), GroupKind::O);
    CHECK(census.nilpotent_count == 4);
    CHECK(sizes(census) == std::vector<long long>{1, 3});
    CHECK(census_compare(census).pass);
}

TEST_CASE("o_4^+(F_2): O and SO censuses") {
    QuadSpace v = space(SpaceKind::plus, 4);
    auto o = orbit_partition(v, GroupKind::O);
    CHECK(o.nilpotent_count == 16);
    CHECK(sizes(o) == std::vector<long long>{1, 6, 9});
    auto bs = by_symbol(o);
    CHECK(bs["(1)_1^4"] == std::vector<long long>{1});
    CHECK(bs["(2)_1^2"] == std::vector<long long>{6});
    CHECK(bs["(2)_2^2"] == std::vector<long long>{9});
    CHECK(census_compare(o).pass);

    auto so = orbit_partition(v, GroupKind::SO);
    CHECK(so.orbits.size() == 4);
    CHECK(sizes(so) == std::vector<long long>{1, 3, 3, 9});
    int split_records = 0;
    for (const auto& r : so.orbits)
        if (r.so_split) {
            ++split_records;
            CHECK(to_string(r.symbol) == "(2)_1^2"); // the all-chi-half symbol
        }
    CHECK(split_records == 2);
    CHECK(census_compare(so).pass);
}

TEST_CASE("o_4^-(F_2): two orbits, no SO splits") {
    QuadSpace v = space(SpaceKind::minus, 4);
    auto o = orbit_partition(v, GroupKind::O);
    CHECK(o.nilpotent_count == 16);
    CHECK(sizes(o) == std::vector<long long>{1, 15});
    CHECK(census_compare(o).pass);

    auto so = orbit_partition(v, GroupKind::SO);
    CHECK(so.orbits.size() == 2);
    for (const auto& r : so.orbits) CHECK(!r.so_split);
    CHECK(census_compare(so).pass);
}

TEST_CASE("o_5(F_2): five orbits with frozen sizes") {
    auto census = orbit_partition(space(SpaceKind::odd, 5), GroupKind::O);
    CHECK(census.nilpotent_count == 256);
    CHECK(sizes(census) == std::vector<long long>{1, 15, 15, 45, 180});
    CHECK(census_compare(census).pass);
}

TEST_CASE("o_6^+/-(F_2): frozen per-symbol orbit sizes") {
    auto plus = orbit_partition(space(SpaceKind::plus, 6), GroupKind::O);
    CHECK(plus.nilpotent_count == 4096);
    auto bp = by_symbol(plus);
    CHECK(bp["(1)_1^6"] == std::vector<long long>{1});
    CHECK(bp["(2)_1^2(1)_1^2"] == std::vector<long long>{105});
    CHECK(bp["(2)_2^2(1)_1^2"] == std::vector<long long>{210});
    CHECK(bp["(3)_2^2"] == std::vector<long long>{1260});
    CHECK(bp["(3)_3^2"] == std::vector<long long>{2520});
    CHECK(census_compare(plus).pass);

    auto minus = orbit_partition(space(SpaceKind::minus, 6), GroupKind::O);
    CHECK(minus.nilpotent_count == 4096);
    auto bm = by_symbol(minus);
    CHECK(bm["(1)_1^6"] == std::vector<long long>{1});
    CHECK(bm["(2)_1^2(1)_1^2"] == std::vector<long long>{45});
    CHECK(bm["(2)_2^2(1)_1^2"] == std::vector<long long>{270});
    CHECK(bm["(3)_2^2"] == std::vector<long long>{540});
    CHECK(bm["(3)_3^2"] == std::vector<long long>{3240});
    CHECK(census_compare(minus).pass);

    // SO on dimension 6: no splits (n = 3 is odd, so no all-chi-half symbols)
    auto so = orbit_partition(space(SpaceKind::plus, 6), GroupKind::SO);
    CHECK(so.orbits.size() == 5);
    for (const auto& r : so.orbits) CHECK(!r.so_split);
    CHECK(census_compare(so).pass);
}

TEST_CASE("q = 4 censuses in small dimension") {
    auto c3 = orbit_partition(space(SpaceKind::odd, 3, 2), GroupKind::O);
    CHECK(c3.nilpotent_count == 16);
    CHECK(c3.orbits.size() == 2);
    CHECK(census_compare(c3).pass);

    auto c4p = orbit_partition(space(SpaceKind::plus, 4, 2), GroupKind::O);
    CHECK(c4p.orbits.size() == 3);
    CHECK(census_compare(c4p).pass);

    auto c4m = orbit_partition(space(SpaceKind::minus, 4, 2), GroupKind::O);
    CHECK(c4m.orbits.size() == 2);
    CHECK(census_compare(c4m).pass);
}

TEST_CASE("symbols are constant on orbits (full check in dim <= 4)") {
    for (auto kind : {SpaceKind::plus, SpaceKind::minus}) {
        QuadSpace v = space(kind, 4);
        auto group = orthogonal_group_elements(v);
        for (const auto& x : enumerate_nilpotents(v)) {
            const std::string want = to_string(symbol_of(FormModule(v, x)));
            for (const auto& g : group) {
                Mat y = g * x * g.inverse();
                CHECK(to_string(symbol_of(FormModule(v, y))) == want);
            }
        }
    }
    // dim 5: sampled transvection conjugates
    QuadSpace v5 = space(SpaceKind::odd, 5);
    std::vector<Mat> ts;
    for (std::uint64_t i = 1; i < 32 && ts.size() < 10; ++i) {
        Vec w = Vec::from_index(v5.field(), 5, i);
        if (v5.q_bits(w)) ts.push_back(v5.transvection(w));
    }
    for (const auto& x : enumerate_nilpotents(v5)) {
        const std::string want = to_string(symbol_of(FormModule(v5, x)));
        for (const auto& t : ts)
            CHECK(to_string(symbol_of(FormModule(v5, t * x * t.inverse()))) == want);
    }
}

TEST_CASE("symbols are constant on orbits (100 samples per orbit in dim 6)") {
    for (auto kind : {SpaceKind::plus, SpaceKind::minus}) {
        QuadSpace v = space(kind, 6);
        std::vector<Mat> ts;
        for (std::uint64_t i = 1; i < 64; ++i) {
            Vec w = Vec::from_index(v.field(), 6, i);
            if (v.q_bits(w)) ts.push_back(v.transvection(w));
        }
        auto census = orbit_partition(v, GroupKind::O);
        std::uint64_t seed = 0xabcdef;
        for (const auto& orbit : census.orbits) {
            const std::string want = to_string(orbit.symbol);
            Mat x = orbit.representative;
            for (int sample = 0; sample < 100; ++sample) {
                seed = seed * 6364136223846793005ull + 1442695040888963407ull;
                const Mat& t = ts[(seed >> 17) % ts.size()];
                x = t * x * t.inverse(); // random walk stays inside the orbit
                CHECK(to_string(symbol_of(FormModule(v, x))) == want);
            }
        }
    }
}

TEST_CASE("orbit sizes divide the group order in dim <= 4") {
    for (auto kind : {SpaceKind::plus, SpaceKind::minus}) {
        QuadSpace v = space(kind, 4);
        const long long order = (long long)(orthogonal_group_elements(v).size());
        auto census = orbit_partition(v, GroupKind::O);
        for (const auto& o : census.orbits) CHECK(order % o.size == 0);
    }
    CHECK(orthogonal_group_elements(space(SpaceKind::plus, 4)).size() == 72);
}

TEST_CASE("conjugacy probes") {
    QuadSpace v = space(SpaceKind::odd, 3);
    auto nil = enumerate_nilpotents(v);
    REQUIRE(nil.size() == 4);
    CHECK(conjugacy_probe(v, nil[1], nil[1], GroupKind::O));
    CHECK(!conjugacy_probe(v, nil[0], nil[1], GroupKind::O)); // zero vs nonzero
    CHECK(conjugacy_probe(v, nil[1], nil[2], GroupKind::O));  // both in the regular orbit

    Mat outside = Mat::identity(v.field(), 3);
    CHECK_THROWS_AS(conjugacy_probe(v, nil[0], outside, GroupKind::O), input_error);
}

TEST_CASE("SO probes separate the halves of a split orbit") {
    QuadSpace v = space(SpaceKind::plus, 4);
    auto census = orbit_partition(v, GroupKind::SO);
    const OrbitRecord* half0 = nullptr;
    const OrbitRecord* half1 = nullptr;
    for (const auto& r : census.orbits) {
        if (!r.so_split) continue;
        (r.parity == 0 ? half0 : half1) = &r;
    }
    REQUIRE(half0 != nullptr);
    REQUIRE(half1 != nullptr);
    CHECK(conjugacy_probe(v, half0->representative, half1->representative, GroupKind::O));
    CHECK(!conjugacy_probe(v, half0->representative, half1->representative, GroupKind::SO));
    CHECK(conjugacy_probe(v, half0->representative, half0->representative, GroupKind::SO));
}

TEST_CASE("capacity errors name the budget") {
    OracleOptions opt;
    opt.cap_bits = 10;
    try {
        orbit_partition(space(SpaceKind::odd, 7), GroupKind::O, opt);
        FAIL("expected capacity_error");
    } catch (const capacity_error& err) {
        CHECK(std::string(err.what()).find("2^21") != std::string::npos);
    }
}

TEST_CASE("worker partitioning does not change the enumeration") {
    QuadSpace v = space(SpaceKind::odd, 5);
    OracleOptions two;
    two.jobs = 2;
    auto a = enumerate_nilpotents(v);
    auto b = enumerate_nilpotents(v, two);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("minimal dimensions: the zero orbit alone") {
    for (auto [kind, n] : std::vector<std::pair<SpaceKind, std::size_t>>{
             {SpaceKind::odd, 1}, {SpaceKind::plus, 2}, {SpaceKind::minus, 2}}) {
        for (unsigned e : {1u, 2u}) {
            auto census = orbit_partition(space(kind, n, e), GroupKind::O);
            CHECK(census.nilpotent_count == 1);
            REQUIRE(census.orbits.size() == 1);
            CHECK(census.orbits[0].representative.is_zero());
            CHECK(census_compare(census).pass);
        }
    }
}

TEST_CASE("degenerate spaces are rejected") {
    const FieldSpec& f2 = FieldSpec::get(1);
    QuadSpace degenerate = QuadSpace::from_upper(Mat(f2, 2, 2));
    CHECK_THROWS_AS(orbit_partition(degenerate, GroupKind::O), input_error);
    CHECK_THROWS_AS(enumerate_nilpotents(degenerate), input_error);
}
