#include "nilp2/formmodule.hpp"

#include "nilp2/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilp2 {

int IndexFn::at(int part) const {
    auto it = values_.find(part);
    if (it == values_.end()) throw input_error("index function not stored at part " +
                                               std::to_string(part));
    return it->second;
}

namespace {

Partition jordan_from_ranks(const QuadSpace& V, const Mat& t) {
    const std::size_t N = V.dim();
    std::vector<std::size_t> ranks(N + 2, 0);
    Mat p = Mat::identity(V.field(), N);
    ranks[0] = N;
    for (std::size_t j = 1; j <= N + 1; ++j) {
        p = p * t;
        ranks[j] = p.rank();
        if (ranks[j] == 0) {
            for (std::size_t i = j + 1; i <= N + 1; ++i) ranks[i] = 0;
            break;
        }
    }
    Partition out;
    for (std::size_t j = N; j >= 1; --j) {
        // multiplicity of parts >= j is rank(T^{j-1}) - rank(T^j)
        const std::size_t geq_j = ranks[j - 1] - ranks[j];
        const std::size_t geq_j1 = ranks[j] - ranks[j + 1];
        for (std::size_t c = 0; c < geq_j - geq_j1; ++c) out.parts.push_back(int(j));
    }
    std::sort(out.parts.begin(), out.parts.end(), std::greater<int>());
    return out;
}

} // namespace

int chi_value(const QuadSpace& V, const Mat& t, int part) {
    if (part < 0) throw input_error("chi of a negative part");
    const FieldSpec& f = V.field();
    std::vector<Vec> kernel = t.pow(part).kernel_basis();
    Mat tk = Mat::identity(f, V.dim());
    for (int k = 0;; ++k) {
        bool vanishes = true;
        std::vector<Vec> imgs;
        imgs.reserve(kernel.size());
        for (const auto& b : kernel) imgs.push_back(tk * b);
        for (const auto& w : imgs)
            if (V.q_bits(w)) { vanishes = false; break; }
        if (vanishes)
            for (std::size_t i = 0; i < imgs.size() && vanishes; ++i)
                for (std::size_t j = i + 1; j < imgs.size(); ++j)
                    if (V.bilinear_bits(imgs[i], imgs[j])) { vanishes = false; break; }
        if (vanishes) return k;
        tk = tk * t;
        if (k > int(V.dim()))
            throw construction_error("index function failed to terminate");
    }
}

FormModule::FormModule(QuadSpace space, Mat t) : space_(std::move(space)), t_(std::move(t)) {
    if (t_.rows() != space_.dim() || t_.cols() != space_.dim() || t_.field() != space_.field())
        throw input_error("endomorphism does not match the space");
    if (!is_nilpotent(t_)) throw input_error("form module needs a nilpotent endomorphism");
    if (!space_.in_lie_algebra(t_)) throw input_error("endomorphism is not in o(V)");
    jordan_ = jordan_from_ranks(space_, t_);
    std::map<int, int, std::greater<int>> chi;
    for (int part : jordan_.parts)
        if (!chi.count(part)) chi[part] = chi_value(space_, t_, part);
    chi_ = IndexFn(std::move(chi));
}

Partition jordan_type(const FormModule& m) { return m.jordan(); }
IndexFn index_function(const FormModule& m) { return m.chi(); }

Symbol symbol_of(const FormModule& m) {
    if (!m.space().is_nondegenerate())
        throw input_error("symbol of a module on a degenerate space");
    std::vector<SymbolEntry> es;
    int prev = 0;
    int mult = 0;
    for (int part : m.jordan().parts) {
        if (part == prev) {
            ++mult;
            continue;
        }
        if (prev) es.push_back({prev, m.chi().at(prev), mult});
        prev = part;
        mult = 1;
    }
    if (prev) es.push_back({prev, m.chi().at(prev), mult});
    return Symbol(std::move(es));
}

FormModule orthogonal_sum(const FormModule& a, const FormModule& b) {
    if (a.space().field() != b.space().field())
        throw input_error("orthogonal sum over different fields");
    const FieldSpec& f = a.space().field();
    const std::size_t na = a.space().dim(), nb = b.space().dim();
    Mat upper(f, na + nb, na + nb);
    Mat t(f, na + nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            upper.set(i, j, a.space().upper()(i, j));
            t.set(i, j, a.endo()(i, j));
        }
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            upper.set(na + i, na + j, b.space().upper()(i, j));
            t.set(na + i, na + j, b.endo()(i, j));
        }
    return FormModule(QuadSpace::from_upper(std::move(upper)), std::move(t));
}

namespace {

struct Profiles {
    CoeffProfile phi;  // phi(v1, v2)
    CoeffProfile psi1; // psi(v1)
    CoeffProfile psi2; // psi(v2)
};

// Classification profiles of the three families; positive powers of t fall
// outside E and are dropped.
Profiles profiles_for(const IndecompSpec& spec, const FieldSpec& f) {
    Profiles p;
    p.psi1.even_only = p.psi2.even_only = true;
    auto put = [](CoeffProfile& cp, int neg_exponent, std::uint32_t c) {
        if (neg_exponent >= 0 && c) cp.coeff[neg_exponent] = c;
    };
    switch (spec.family) {
    case IndecompSpec::Family::W0:
        put(p.psi1, 2 * spec.l - 2, 1);
        put(p.phi, spec.m - 1, 1);
        break;
    case IndecompSpec::Family::Wdelta:
        put(p.psi1, 2 * spec.l - 2, 1);
        put(p.psi2, 2 * spec.m - 2 * spec.l, f.delta());
        put(p.phi, spec.m - 1, 1);
        break;
    case IndecompSpec::Family::D:
        put(p.psi1, 2 * spec.m - 2, 1);
        put(p.phi, spec.m - 2, 1);
        break;
    }
    return p;
}

const char* family_name(IndecompSpec::Family fam) {
    switch (fam) {
    case IndecompSpec::Family::W0: return "W^0";
    case IndecompSpec::Family::Wdelta: return "W^delta";
    case IndecompSpec::Family::D: return "D";
    }
    return "?";
}

void check_parameters(const IndecompSpec& spec) {
    const int l = spec.l, m = spec.m;
    switch (spec.family) {
    case IndecompSpec::Family::W0:
        // Gauss bracket [(m+1)/2] <= l <= m, i.e. 2l >= m
        if (m < 1 || l < (m + 1) / 2 || l > m)
            throw input_error("W^0(l,m) parameters out of range: need [(m+1)/2] <= l <= m, got l=" +
                              std::to_string(l) + ", m=" + std::to_string(m));
        break;
    case IndecompSpec::Family::Wdelta:
        // literal rational bound (m+1)/2 <= l, i.e. 2l >= m+1
        if (m < 1 || 2 * l < m + 1 || l > m) {
            std::ostringstream msg;
            msg << "W^delta(l,m) parameters out of range: need (m+1)/2 <= l <= m, got l=" << l
                << ", m=" << m;
            if (m % 2 == 0 && 2 * l == m)
                msg << " (boundary case l = m/2: the rational bound excludes it; the delta "
                       "variant exists only for 2l > m)";
            throw input_error(msg.str());
        }
        break;
    case IndecompSpec::Family::D:
        if (m < 1) throw input_error("D(m) needs m >= 1");
        break;
    }
}

} // namespace

BuiltModule build_indecomposable(const IndecompSpec& spec, const FieldSpec& f) {
    check_parameters(spec);
    const std::size_t mu1 = std::size_t(spec.m);
    const std::size_t mu2 =
        spec.family == IndecompSpec::Family::D ? std::size_t(spec.m - 1) : std::size_t(spec.m);
    const std::size_t N = mu1 + mu2;
    Profiles p = profiles_for(spec, f);

    Mat t(f, N, N);
    for (std::size_t a = 0; a + 1 < mu1; ++a) t.set(a + 1, a, 1);
    for (std::size_t b = 0; b + 1 < mu2; ++b) t.set(mu1 + b + 1, mu1 + b, 1);

    auto coeff = [](const CoeffProfile& cp, int n) -> std::uint32_t {
        auto it = cp.coeff.find(n);
        return it == cp.coeff.end() ? 0 : it->second;
    };
    Mat upper(f, N, N);
    // Q(T^a v_i) from psi_i; cross pairings from phi; same-generator pairings
    // vanish (forced by <Tw,w> = 0 and self-adjointness).
    for (std::size_t a = 0; a < mu1; ++a) upper.set(a, a, coeff(p.psi1, 2 * int(a)));
    for (std::size_t b = 0; b < mu2; ++b)
        upper.set(mu1 + b, mu1 + b, coeff(p.psi2, 2 * int(b)));
    for (std::size_t a = 0; a < mu1; ++a)
        for (std::size_t b = 0; b < mu2; ++b)
            upper.set(a, mu1 + b, coeff(p.phi, int(a + b)));

    FormModule mod(QuadSpace::from_upper(std::move(upper)), std::move(t));
    if (!mod.space().is_nondegenerate())
        throw construction_error(std::string(family_name(spec.family)) +
                                 " construction produced a degenerate space");
    return BuiltModule{std::move(mod), mu1, mu2};
}

int CoeffProfile::mu() const {
    int best = -1;
    for (const auto& [n, c] : coeff)
        if (c) best = std::max(best, n);
    return best + 1;
}

AbstractCase check_abstract_constraints(const BuiltModule& b) {
    const QuadSpace& V = b.mod.space();
    const Mat& t = b.mod.endo();
    const FieldSpec& f = V.field();
    const std::size_t N = V.dim();

    Vec v1 = Vec::unit(f, N, 0);
    Vec v2 = b.mu2 ? Vec::unit(f, N, b.mu1) : Vec(f, N);

    auto mu_vec = [&](const Vec& v) {
        Vec x = v;
        int k = 0;
        while (!x.is_zero()) {
            x = t * x;
            ++k;
            if (k > int(N) + 1) throw construction_error("mu computation failed to terminate");
        }
        return k;
    };

    CoeffProfile phi, psi1, psi2;
    psi1.even_only = psi2.even_only = true;
    Vec x = v1;
    for (std::size_t n = 0; n <= N; ++n) {
        if (std::uint32_t c = V.bilinear_bits(x, v2)) phi.coeff[int(n)] = c;
        if (std::uint32_t c = V.q_bits(x)) psi1.coeff[2 * int(n)] = c;
        x = t * x;
    }
    Vec y = v2;
    for (std::size_t n = 0; n <= N; ++n) {
        if (std::uint32_t c = V.q_bits(y)) psi2.coeff[2 * int(n)] = c;
        y = t * y;
    }

    const int m = mu_vec(v1);
    const int mp = b.mu2 ? mu_vec(v2) : 0;
    if (m != int(b.mu1) || mp != int(b.mu2))
        throw construction_error("generator depths do not match the construction");

    const int mu_phi = phi.mu(), mu_psi1 = psi1.mu(), mu_psi2 = psi2.mu();
    if (mp == m && mu_phi == m && mu_psi1 <= 2 * m - 1 && mu_psi2 <= 2 * m - 1)
        return AbstractCase::case_i;
    if (mp == m - 1 && mu_phi == m - 1 && mu_psi1 == 2 * m - 1 && mu_psi2 < 2 * m - 1)
        return AbstractCase::case_ii;
    std::ostringstream msg;
    msg << "indecomposable fits neither abstract case: m=" << m << " m'=" << mp
        << " mu(Phi)=" << mu_phi << " mu(Psi1)=" << mu_psi1 << " mu(Psi2)=" << mu_psi2;
    throw construction_error(msg.str());
}

FormModule module_from_symbol(const Symbol& s, const FieldSpec& field, std::uint32_t mask) {
    SymbolValidity v = validate_symbol(s);
    if (!v.ok) throw input_error("cannot build a module for an invalid symbol: " + v.diagnostic);
    const auto toggles = admissible_toggle_indices(s);
    if (toggles.size() < 32 && mask >> toggles.size())
        throw input_error("variant mask has more bits than admissible toggle positions (" +
                          std::to_string(toggles.size()) + ")");

    const auto& es = s.entries();
    std::vector<int> remaining(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) remaining[i] = es[i].mult;

    std::vector<BuiltModule> blocks;
    // D block first: consumes the odd-multiplicity parts {a, a-1} or {1}.
    std::vector<std::size_t> odd_idx;
    for (std::size_t i = 0; i < es.size(); ++i)
        if (es[i].mult % 2 == 1) odd_idx.push_back(i);
    if (!odd_idx.empty()) {
        const int a = es[odd_idx.front()].part;
        blocks.push_back(build_indecomposable({IndecompSpec::Family::D, 0, a}, field));
        for (auto i : odd_idx) --remaining[i];
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (remaining[i] % 2 != 0)
            throw construction_error("multiplicities not even after D consumption");
        int copies = remaining[i] / 2;
        if (copies == 0) continue;
        bool use_delta = false;
        for (std::size_t bit = 0; bit < toggles.size(); ++bit)
            if (toggles[bit] == i && (mask >> bit & 1)) use_delta = true;
        for (int c = 0; c < copies; ++c) {
            const auto family = (use_delta && c == 0) ? IndecompSpec::Family::Wdelta
                                                      : IndecompSpec::Family::W0;
            blocks.push_back(build_indecomposable({family, es[i].index, es[i].part}, field));
        }
    }

    if (blocks.empty()) throw construction_error("symbol produced no blocks");
    FormModule mod = std::move(blocks.front().mod);
    for (std::size_t i = 1; i < blocks.size(); ++i) mod = orthogonal_sum(mod, blocks[i].mod);

    if (!mod.space().is_nondegenerate())
        throw construction_error("synthesized module is degenerate for symbol " + to_string(s));
    Symbol got = symbol_of(mod);
    if (got != s)
        throw construction_error("symbol round-trip failed: wanted " + to_string(s) + ", got " +
                                 to_string(got));
    return mod;
}

FormModule module_from_symbol(const Symbol& s, const FieldSpec& field,
                              const std::string& mask_bits) {
    const auto toggles = admissible_toggle_indices(s);
    if (mask_bits.size() != toggles.size())
        throw input_error("variant mask length " + std::to_string(mask_bits.size()) +
                          " does not match the number of admissible toggle positions (" +
                          std::to_string(toggles.size()) + ")");
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < mask_bits.size(); ++i) {
        if (mask_bits[i] == '1')
            mask |= 1u << i;
        else if (mask_bits[i] != '0')
            throw input_error("variant mask must consist of 0s and 1s");
    }
    return module_from_symbol(s, field, mask);
}

Mat transport_endo(const FormModule& m, const QuadSpace& target) {
    if (m.space().dim() != target.dim() || m.space().field() != target.field())
        throw input_error("transport needs matching dimension and field");
    if (m.space().witt_type() != target.witt_type())
        throw input_error("transport needs matching Witt type");
    Mat pm = m.space().isometry_from_standard();  // std -> m.space
    Mat pt = target.isometry_from_standard();     // std -> target
    Mat map = pt * pm.inverse();                  // m.space -> target
    Mat out = map * m.endo() * map.inverse();
    if (!target.in_lie_algebra(out))
        throw construction_error("transported endomorphism left o(V)");
    return out;
}

} // namespace nilp2
