#include "nilp2/oracle.hpp"

#include "nilp2/census.hpp"
#include "nilp2/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <thread>

namespace nilp2 {

const char* to_string(GroupKind g) { return g == GroupKind::O ? "O" : "SO"; }

GroupKind group_kind_from_string(const std::string& s) {
    if (s == "O") return GroupKind::O;
    if (s == "SO") return GroupKind::SO;
    throw input_error("unknown group kind '" + s + "' (expected O|SO)");
}

namespace {

// ---- packed 8x8 GF(2) matrices: row i occupies byte i of a uint64 ----

std::uint64_t pack_gf2(const Mat& m) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j)) r |= std::uint64_t(1) << (8 * i + j);
    return r;
}

inline std::uint64_t mul8(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (int j = 0; j < 8; ++j) {
        const std::uint64_t col = (a >> j) & 0x0101010101010101ULL;
        const std::uint64_t brow = ((b >> (8 * j)) & 0xFF) * 0x0101010101010101ULL;
        r ^= (col * 0xFF) & brow;
    }
    return r;
}

inline bool nilpotent8(std::uint64_t a, unsigned squarings) {
    for (unsigned s = 0; s < squarings; ++s) a = mul8(a, a);
    return a == 0;
}

// ---- coordinates of the nilpotent cone inside o(V) ----

struct AlgebraContext {
    const QuadSpace* V;
    std::vector<Mat> basis;
    SpanSolver solver;
    unsigned k;          // dim o(V)
    unsigned e;          // field degree
    unsigned state_bits; // k * e
    std::uint64_t total; // q^k

    AlgebraContext(const QuadSpace& space, const OracleOptions& opt)
        : V(&space), basis(space.lie_algebra_basis()), solver(basis),
          k(unsigned(basis.size())), e(space.field().degree()), state_bits(k * e),
          total(std::uint64_t(1) << std::uint64_t(std::min(63u, k * e))) {
        if (state_bits > opt.cap_bits || state_bits > 31) {
            std::ostringstream msg;
            msg << "enumeration over o(V) needs q^" << k << " = 2^" << state_bits
                << " states, above the cap 2^" << std::min(opt.cap_bits, 31u)
                << " (raise --cap if you mean it)";
            throw capacity_error(msg.str());
        }
    }

    // digit i (coefficient of basis[i]) sits at bit offset e*(k-1-i), so packed
    // order is lexicographic with the first coefficient most significant
    std::uint32_t digit(std::uint32_t packed, unsigned i) const {
        return (packed >> (e * (k - 1 - i))) & (V->field().order() - 1);
    }

    Mat matrix_of(std::uint32_t packed) const {
        if (k == 0) return Mat(V->field(), V->dim(), V->dim());
        std::vector<std::uint32_t> coeffs(k);
        for (unsigned i = 0; i < k; ++i) coeffs[i] = digit(packed, i);
        return solver.combine(coeffs);
    }

    std::uint32_t coords_of(const Mat& x) const {
        auto c = solver.coords(x);
        if (!c) throw input_error("matrix is not in o(V)");
        std::uint32_t packed = 0;
        for (unsigned i = 0; i < k; ++i)
            packed |= (*c)[i] << (e * (k - 1 - i));
        return packed;
    }
};

// Enumerate nilpotent states in [lo, hi) in increasing packed order, keeping
// the current matrix in sync with one odometer delta per changed digit.
void scan_range_generic(const AlgebraContext& cx, std::uint32_t lo, std::uint32_t hi,
                        std::vector<std::uint32_t>& out) {
    const FieldSpec& f = cx.V->field();
    Mat cur = cx.matrix_of(lo);
    const std::size_t n = cx.V->dim();
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (is_nilpotent(cur)) out.push_back(std::uint32_t(idx));
        if (idx + 1 == hi) break;
        std::uint32_t flips = std::uint32_t(idx) ^ std::uint32_t(idx + 1);
        while (flips) {
            const unsigned d = unsigned(std::countr_zero(flips)) / cx.e; // digit from LSB side
            const unsigned digit_pos = cx.k - 1 - d;
            const std::uint32_t delta = cx.digit(std::uint32_t(idx), digit_pos) ^
                                        cx.digit(std::uint32_t(idx + 1), digit_pos);
            const Mat& b = cx.basis[digit_pos];
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (b(r, c)) cur.add_at(r, c, f.mul(delta, b(r, c)));
            flips &= ~(((std::uint32_t(1) << cx.e) - 1) << (d * cx.e));
        }
    }
}

void scan_range_gf2(const AlgebraContext& cx, const std::vector<std::uint64_t>& packed_basis,
                    unsigned squarings, std::uint32_t lo, std::uint32_t hi,
                    std::vector<std::uint32_t>& out) {
    std::uint64_t cur = 0;
    for (unsigned i = 0; i < cx.k; ++i)
        if (lo >> (cx.k - 1 - i) & 1) cur ^= packed_basis[i];
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (nilpotent8(cur, squarings)) out.push_back(std::uint32_t(idx));
        if (idx + 1 == hi) break;
        std::uint32_t flips = std::uint32_t(idx) ^ std::uint32_t(idx + 1);
        while (flips) {
            cur ^= packed_basis[cx.k - 1 - unsigned(std::countr_zero(flips))];
            flips &= flips - 1;
        }
    }
}

std::vector<std::uint32_t> nilpotent_states(const AlgebraContext& cx, const OracleOptions& opt) {
    const bool gf2_fast = cx.e == 1 && cx.V->dim() <= 8;
    std::vector<std::uint64_t> packed_basis;
    unsigned squarings = 0;
    if (gf2_fast) {
        for (const auto& b : cx.basis) packed_basis.push_back(pack_gf2(b));
        while ((std::size_t(1) << squarings) < cx.V->dim()) ++squarings;
    }
    const unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1 || cx.total < 1024) {
        std::vector<std::uint32_t> out;
        if (gf2_fast)
            scan_range_gf2(cx, packed_basis, squarings, 0, std::uint32_t(cx.total), out);
        else
            scan_range_generic(cx, 0, std::uint32_t(cx.total), out);
        return out;
    }
    // element range partitioned across workers, results merged in fixed order
    std::vector<std::vector<std::uint32_t>> parts(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint32_t lo = std::uint32_t(cx.total * w / jobs);
        const std::uint32_t hi = std::uint32_t(cx.total * (w + 1) / jobs);
        workers.emplace_back([&, w, lo, hi] {
            if (gf2_fast)
                scan_range_gf2(cx, packed_basis, squarings, lo, hi, parts[w]);
            else
                scan_range_generic(cx, lo, hi, parts[w]);
        });
    }
    for (auto& t : workers) t.join();
    std::vector<std::uint32_t> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// ---- conjugation as a linear action on algebra coordinates ----

struct CoordAction {
    unsigned parity = 0; // Dickson invariant of the group element
    // generic: k x k row-major raw field entries; gf2: one mask per row
    std::vector<std::uint32_t> rows;

    static CoordAction build(const AlgebraContext& cx, const Mat& g, unsigned parity) {
        CoordAction a;
        a.parity = parity;
        Mat gi = g.inverse();
        std::vector<std::vector<std::uint32_t>> cols;
        for (unsigned j = 0; j < cx.k; ++j) {
            auto c = cx.solver.coords(g * cx.basis[j] * gi);
            if (!c) throw construction_error("conjugation left o(V)");
            cols.push_back(std::move(*c));
        }
        if (cx.e == 1) {
            a.rows.assign(cx.k, 0);
            for (unsigned i = 0; i < cx.k; ++i)
                for (unsigned j = 0; j < cx.k; ++j)
                    if (cols[j][i]) a.rows[i] |= std::uint32_t(1) << (cx.k - 1 - j);
        } else {
            a.rows.assign(std::size_t(cx.k) * cx.k, 0);
            for (unsigned i = 0; i < cx.k; ++i)
                for (unsigned j = 0; j < cx.k; ++j) a.rows[std::size_t(i) * cx.k + j] = cols[j][i];
        }
        return a;
    }

    std::uint32_t apply(const AlgebraContext& cx, std::uint32_t x) const {
        std::uint32_t y = 0;
        if (cx.e == 1) {
            for (unsigned i = 0; i < cx.k; ++i)
                y |= std::uint32_t(std::popcount(rows[i] & x) & 1) << (cx.k - 1 - i);
        } else {
            const FieldSpec& f = cx.V->field();
            for (unsigned i = 0; i < cx.k; ++i) {
                std::uint32_t s = 0;
                for (unsigned j = 0; j < cx.k; ++j) {
                    const std::uint32_t xj = cx.digit(x, j);
                    if (xj) s ^= f.mul(rows[std::size_t(i) * cx.k + j], xj);
                }
                y |= s << (cx.e * (cx.k - 1 - i));
            }
        }
        return y;
    }
};

std::vector<Mat> generator_matrices(const QuadSpace& V) {
    if (V.dim() <= 4) return orthogonal_group_elements(V);
    // all transvections t_v with Q(v) != 0 (radical directions give the
    // identity map and are skipped)
    const FieldSpec& f = V.field();
    std::vector<Mat> gens;
    const std::uint64_t count = std::uint64_t(1) << (V.dim() * f.degree());
    Mat id = Mat::identity(f, V.dim());
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        Vec v = Vec::from_index(f, V.dim(), idx);
        if (V.q_bits(v) == 0) continue;
        Mat t = V.transvection(v);
        if (t != id) gens.push_back(std::move(t));
    }
    return gens;
}

struct BfsMachine {
    const AlgebraContext& cx;
    bool parity_mode; // track Dickson parities of connecting words (SO censuses)
    std::vector<CoordAction> actions;
    std::vector<std::uint64_t> visited; // state, or (state << 1) | parity

    BfsMachine(const AlgebraContext& cx_in, const std::vector<Mat>& gens, bool with_parity)
        : cx(cx_in), parity_mode(with_parity) {
        for (const auto& g : gens)
            actions.push_back(CoordAction::build(cx, g, parity_mode ? cx.V->dickson(g) : 0));
        const std::uint64_t bits = parity_mode ? cx.total * 2 : cx.total;
        visited.assign(std::size_t((bits + 63) / 64), 0);
    }

    bool seen(std::uint64_t b) const { return visited[b >> 6] >> (b & 63) & 1; }
    void mark(std::uint64_t b) { visited[b >> 6] |= std::uint64_t(1) << (b & 63); }
    bool seen(std::uint32_t state, unsigned parity) const {
        return seen(parity_mode ? (std::uint64_t(state) << 1) | parity : std::uint64_t(state));
    }

    struct Component {
        long long size = 0;           // number of distinct states (O-orbit size)
        bool split = false;           // parity cover disconnected
        std::uint32_t rep0 = 0;       // start state (minimal in the orbit)
        std::uint32_t rep1 = 0;       // minimal state reached at flipped parity (split only)
        long long parity_sizes[2] = {0, 0};
    };

    Component explore(std::uint32_t start) {
        return parity_mode ? explore_cover(start) : explore_plain(start);
    }

    Component explore_plain(std::uint32_t start) {
        Component comp;
        comp.rep0 = start;
        std::vector<std::uint32_t> queue{start};
        mark(start);
        std::size_t head = 0;
        while (head < queue.size()) {
            const std::uint32_t state = queue[head++];
            for (const auto& a : actions) {
                const std::uint32_t next = a.apply(cx, state);
                if (!seen(std::uint64_t(next))) {
                    mark(next);
                    queue.push_back(next);
                }
            }
        }
        comp.size = (long long)(queue.size());
        return comp;
    }

    // BFS on the parity double cover from (start, 0).
    Component explore_cover(std::uint32_t start) {
        Component comp;
        comp.rep0 = start;
        comp.rep1 = std::uint32_t(-1);
        std::vector<std::uint64_t> queue;
        queue.push_back(std::uint64_t(start) << 1);
        mark(std::uint64_t(start) << 1);
        std::size_t head = 0;
        while (head < queue.size()) {
            const std::uint64_t cur = queue[head++];
            const std::uint32_t state = std::uint32_t(cur >> 1);
            const unsigned parity = unsigned(cur & 1);
            if (parity == 0) {
                ++comp.parity_sizes[0];
            } else {
                ++comp.parity_sizes[1];
                comp.rep1 = std::min(comp.rep1, state);
            }
            for (const auto& a : actions) {
                const std::uint32_t next = a.apply(cx, state);
                const std::uint64_t b = (std::uint64_t(next) << 1) | (parity ^ a.parity);
                if (!seen(b)) {
                    mark(b);
                    queue.push_back(b);
                }
            }
        }
        const long long pair_states = comp.parity_sizes[0] + comp.parity_sizes[1];
        comp.split = !seen(start, 1);
        comp.size = comp.split ? pair_states : pair_states / 2;
        if (comp.split && comp.parity_sizes[0] != comp.parity_sizes[1])
            throw construction_error("split orbit with unequal parity classes");
        return comp;
    }
};

FqOrbitCounts expected_orbit_counts(const Symbol& s, SpaceKind kind, GroupKind group) {
    FqOrbitCounts c = fq_orbit_counts(s);
    if (group == GroupKind::SO && kind == SpaceKind::plus && all_chi_half(s))
        c.plus = 2; // the single O+ orbit splits
    // SO on the minus space: no splits expected (all-chi-half symbols are
    // absent there); counts coincide with O
    return c;
}

} // namespace

void visit_nilpotents(const QuadSpace& V, const OracleOptions& opt,
                      const std::function<void(const Mat&)>& fn) {
    if (!V.is_nondegenerate()) throw input_error("nilpotent enumeration needs a non-degenerate space");
    AlgebraContext cx(V, opt);
    for (std::uint32_t s : nilpotent_states(cx, opt)) fn(cx.matrix_of(s));
}

std::vector<Mat> enumerate_nilpotents(const QuadSpace& V, const OracleOptions& opt) {
    std::vector<Mat> out;
    visit_nilpotents(V, opt, [&](const Mat& m) { out.push_back(m); });
    return out;
}

std::vector<Mat> orthogonal_group_elements(const QuadSpace& V) {
    if (!V.is_nondegenerate())
        throw input_error("group enumeration needs a non-degenerate space");
    const FieldSpec& f = V.field();
    const std::size_t N = V.dim();
    const std::size_t vec_bits = N * f.degree();
    if (vec_bits > 20 || N > 6)
        throw capacity_error("full orthogonal group enumeration is limited to q^N <= 2^20, N <= 6");
    const std::uint64_t count = std::uint64_t(1) << vec_bits;

    std::vector<Vec> vecs;
    std::vector<std::uint32_t> qv;
    vecs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        vecs.push_back(Vec::from_index(f, N, i));
        qv.push_back(V.q_bits(vecs.back()));
    }
    // candidate images per basis slot, filtered by the Q constraint
    std::vector<std::vector<std::uint32_t>> slots(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::uint64_t c = 0; c < count; ++c)
            if (qv[c] == V.upper()(i, i)) slots[i].push_back(std::uint32_t(c));

    std::vector<Mat> out;
    std::vector<std::uint32_t> cols;
    std::vector<Vec> gram_cols; // gram * chosen column, for pairing checks
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == N) {
            Mat g(f, N, N);
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t r = 0; r < N; ++r) g.set(r, j, vecs[cols[j]][r]);
            if (!V.is_orthogonal(g)) throw construction_error("isometry extension produced junk");
            out.push_back(std::move(g));
            return;
        }
        for (std::uint32_t c : slots[i]) {
            const Vec& w = vecs[c];
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j) {
                std::uint32_t dot = 0;
                for (std::size_t r = 0; r < N; ++r) dot ^= f.mul(gram_cols[j][r], w[r]);
                if (dot != V.gram()(j, i)) { ok = false; break; }
            }
            if (!ok) continue;
            cols.push_back(c);
            gram_cols.push_back(V.gram() * w);
            self(self, i + 1);
            cols.pop_back();
            gram_cols.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

OrbitCensus orbit_partition(const QuadSpace& V, GroupKind group, const OracleOptions& opt) {
    if (!V.is_nondegenerate()) throw input_error("orbit census needs a non-degenerate space");
    AlgebraContext cx(V, opt);
    const SpaceKind kind = V.witt_type();
    const bool parity_census = group == GroupKind::SO && V.dim() % 2 == 0;

    OrbitCensus census;
    census.kind = kind;
    census.dim = V.dim();
    census.field = &V.field();
    census.group = group;

    std::vector<std::uint32_t> nil = nilpotent_states(cx, opt);
    census.nilpotent_count = (long long)(nil.size());

    BfsMachine bfs(cx, generator_matrices(V), parity_census);
    for (std::uint32_t s : nil) {
        if (bfs.seen(s, 0) || (parity_census && bfs.seen(s, 1))) continue;
        auto comp = bfs.explore(s);
        const Mat rep = cx.matrix_of(comp.rep0);
        const Symbol sym = symbol_of(FormModule(V, rep));
        if (parity_census && comp.split) {
            census.orbits.push_back(
                {rep, comp.parity_sizes[0], sym, true, 0});
            census.orbits.push_back(
                {cx.matrix_of(comp.rep1), comp.parity_sizes[1], sym, true, 1});
        } else {
            census.orbits.push_back({rep, comp.size, sym, false, 0});
        }
    }

    long long total = 0;
    for (const auto& o : census.orbits) total += o.size;
    if (total != census.nilpotent_count)
        throw construction_error("orbit sizes do not sum to the nilpotent count");
    return census;
}

bool conjugacy_probe(const QuadSpace& V, const Mat& x, const Mat& y, GroupKind group,
                     const OracleOptions& opt) {
    if (!V.is_nondegenerate()) throw input_error("conjugacy probe needs a non-degenerate space");
    if (!V.in_lie_algebra(x) || !V.in_lie_algebra(y))
        throw input_error("conjugacy probe arguments must lie in o(V)");
    if (!is_nilpotent(x) || !is_nilpotent(y))
        throw input_error("conjugacy probe arguments must be nilpotent");
    AlgebraContext cx(V, opt);
    const std::uint32_t sx = cx.coords_of(x), sy = cx.coords_of(y);
    const bool so = group == GroupKind::SO && V.dim() % 2 == 0;
    BfsMachine bfs(cx, generator_matrices(V), so);
    bfs.explore(sx);
    // under SO, conjugacy needs a connecting word of Dickson parity 0
    return bfs.seen(sy, 0);
}

CensusComparison census_compare(const OrbitCensus& census) {
    CensusComparison out;
    const int N = int(census.dim);
    const int n = N / 2;

    std::map<std::string, long long> observed;
    for (const auto& o : census.orbits) ++observed[to_string(o.symbol)];

    std::map<std::string, long long> expected;
    for (const auto& s : enumerate_symbols(N)) {
        FqOrbitCounts c = expected_orbit_counts(s, census.kind, census.group);
        long long want = 0;
        switch (census.kind) {
        case SpaceKind::odd: want = c.odd; break;
        case SpaceKind::plus: want = c.plus; break;
        case SpaceKind::minus: want = c.minus; break;
        }
        if (want) expected[to_string(s)] = want;
    }

    for (const auto& [sym, want] : expected) {
        auto it = observed.find(sym);
        const long long got = it == observed.end() ? 0 : it->second;
        if (got != want) {
            std::ostringstream msg;
            msg << "symbol " << sym << ": expected " << want << " orbit(s), observed " << got;
            out.mismatches.push_back(msg.str());
        }
    }
    for (const auto& [sym, got] : observed) {
        if (!expected.count(sym)) {
            std::ostringstream msg;
            msg << "symbol " << sym << ": expected 0 orbit(s), observed " << got;
            out.mismatches.push_back(msg.str());
        }
    }

    if (n >= 1) { // the closed-form count is defined for rank >= 1
        GroupFamily family = GroupFamily::B;
        if (census.kind == SpaceKind::plus)
            family = census.group == GroupKind::SO ? GroupFamily::SOplus : GroupFamily::Dplus;
        else if (census.kind == SpaceKind::minus)
            family = GroupFamily::Dminus;
        const BigInt want_total = orbit_count(family, n);
        const BigInt got_total = census.orbits.size();
        if (want_total != got_total) {
            std::ostringstream msg;
            msg << "total orbit count: formula gives " << want_total << ", census has "
                << got_total;
            out.mismatches.push_back(msg.str());
        }
    }

    out.pass = out.mismatches.empty();
    std::ostringstream sum;
    sum << "o_" << N << (census.kind == SpaceKind::plus ? "^+" : census.kind == SpaceKind::minus ? "^-" : "")
        << "(F_" << census.field->order() << "), group " << to_string(census.group) << ": "
        << census.orbits.size() << " orbit(s), " << census.nilpotent_count << " nilpotent(s): "
        << (out.pass ? "MATCH" : "MISMATCH");
    out.summary = sum.str();
    return out;
}

} // namespace nilp2
