#include "nilp2/quadspace.hpp"

#include "nilp2/errors.hpp"

#include <algorithm>

namespace nilp2 {

const char* to_string(SpaceKind k) {
    switch (k) {
    case SpaceKind::odd: return "odd";
    case SpaceKind::plus: return "plus";
    case SpaceKind::minus: return "minus";
    }
    return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
    if (s == "odd") return SpaceKind::odd;
    if (s == "plus") return SpaceKind::plus;
    if (s == "minus") return SpaceKind::minus;
    throw input_error("unknown space kind '" + s + "' (expected odd|plus|minus)");
}

QuadSpace::QuadSpace(Mat upper)
    : dim_(upper.rows()), upper_(std::move(upper)), gram_(upper_ + upper_.transpose()) {}

QuadSpace QuadSpace::from_upper(Mat upper) {
    if (upper.rows() != upper.cols()) throw input_error("quadratic form matrix must be square");
    for (std::size_t i = 0; i < upper.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (upper(i, j)) throw input_error("quadratic form matrix must be upper triangular");
    return QuadSpace(std::move(upper));
}

QuadSpace QuadSpace::standard(SpaceKind kind, std::size_t N, const FieldSpec& field) {
    if (N == 0) throw input_error("standard space needs positive dimension");
    const bool odd_dim = N % 2 == 1;
    if (odd_dim != (kind == SpaceKind::odd))
        throw input_error(std::string("dimension parity does not match kind '") + to_string(kind) +
                          "'");
    Mat upper(field, N, N);
    switch (kind) {
    case SpaceKind::odd:
        for (std::size_t i = 0; i + 1 < N; i += 2) upper.set(i, i + 1, 1);
        upper.set(N - 1, N - 1, 1);
        break;
    case SpaceKind::plus:
        for (std::size_t i = 0; i < N; i += 2) upper.set(i, i + 1, 1);
        break;
    case SpaceKind::minus:
        for (std::size_t i = 0; i + 2 < N; i += 2) upper.set(i, i + 1, 1);
        upper.set(N - 2, N - 2, 1);
        upper.set(N - 2, N - 1, 1);
        upper.set(N - 1, N - 1, field.delta());
        break;
    }
    return QuadSpace(std::move(upper));
}

std::uint32_t QuadSpace::q_bits(const Vec& v) const {
    if (v.size() != dim_ || v.field() != field())
        throw input_error("vector does not belong to this space");
    const FieldSpec& f = field();
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!v[i]) continue;
        std::uint32_t row = 0;
        for (std::size_t j = i; j < dim_; ++j) row ^= f.mul(upper_(i, j), v[j]);
        s ^= f.mul(v[i], row);
    }
    return s;
}

FieldElem QuadSpace::q_eval(const Vec& v) const { return FieldElem(q_bits(v), field()); }

std::uint32_t QuadSpace::bilinear_bits(const Vec& v, const Vec& w) const {
    if (v.size() != dim_ || w.size() != dim_ || v.field() != field() || w.field() != field())
        throw input_error("vector does not belong to this space");
    const FieldSpec& f = field();
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!v[i]) continue;
        std::uint32_t row = 0;
        for (std::size_t j = 0; j < dim_; ++j) row ^= f.mul(gram_(i, j), w[j]);
        s ^= f.mul(v[i], row);
    }
    return s;
}

FieldElem QuadSpace::bilinear(const Vec& v, const Vec& w) const {
    return FieldElem(bilinear_bits(v, w), field());
}

std::vector<Vec> QuadSpace::radical() const { return gram_.kernel_basis(); }

bool QuadSpace::is_nondegenerate() const {
    if (dim_ == 0) return false;
    auto rad = radical();
    if (rad.size() > 1) return false;
    for (const auto& r : rad)
        if (q_bits(r) == 0) return false;
    return true;
}

bool QuadSpace::is_defective() const { return !radical().empty(); }

namespace {

// Gram-restricted pairing helpers on a working basis of a subspace.
struct SubSpace {
    const QuadSpace* V;
    std::vector<Vec> basis;

    std::uint32_t q(const Vec& v) const { return V->q_bits(v); }
    std::uint32_t b(const Vec& v, const Vec& w) const { return V->bilinear_bits(v, w); }
};

// Constructive nonzero singular vector in span(basis), dim >= 1.
std::optional<Vec> singular_constructive(const SubSpace& S) {
    const FieldSpec& f = S.V->field();
    const auto& bas = S.basis;
    for (const auto& v : bas)
        if (S.q(v) == 0) return v;
    if (bas.size() < 2) return std::nullopt;
    // All basis vectors nonsingular.  Hunt in planes first.
    for (std::size_t i = 0; i < bas.size(); ++i)
        for (std::size_t j = i + 1; j < bas.size(); ++j) {
            const std::uint32_t beta = S.b(bas[i], bas[j]);
            const std::uint32_t qi = S.q(bas[i]), qj = S.q(bas[j]);
            if (beta == 0) {
                // Q(c b_i + b_j) = c^2 Q_i + Q_j; Frobenius is onto.
                Vec v = bas[j] + bas[i].scaled(f.sqrt(f.mul(qj, f.inv(qi))));
                if (S.q(v) != 0) throw construction_error("singular candidate failed");
                return v;
            }
            // Q(x b_i + b_j) = x^2 Q_i + x beta + Q_j = 0: substitute
            // x = s beta / Q_i, reduce to s^2 + s = Q_i Q_j / beta^2.
            const std::uint32_t a = f.mul(f.mul(qi, qj), f.inv(f.mul(beta, beta)));
            if (auto s = f.artin_schreier_root(a)) {
                Vec v = bas[j] + bas[i].scaled(f.mul(*s, f.mul(beta, f.inv(qi))));
                if (v.is_zero()) continue; // s = 0 with qj = 0 cannot happen here
                if (S.q(v) != 0) throw construction_error("singular candidate failed");
                return v;
            }
            // Plane span(b_i, b_j) anisotropic; push a third vector into its
            // perpendicular and finish with a Frobenius scaling.
            for (std::size_t k = 0; k < bas.size(); ++k) {
                if (k == i || k == j) continue;
                const std::uint32_t inv_beta = f.inv(beta);
                Vec w = bas[k] + bas[i].scaled(f.mul(S.b(bas[k], bas[j]), inv_beta)) +
                        bas[j].scaled(f.mul(S.b(bas[k], bas[i]), inv_beta));
                if (S.b(w, bas[i]) != 0 || S.b(w, bas[j]) != 0)
                    throw construction_error("projection failed");
                const std::uint32_t qw = S.q(w);
                if (qw == 0) return w;
                Vec v = w + bas[i].scaled(f.sqrt(f.mul(qw, f.inv(qi))));
                if (S.q(v) != 0) throw construction_error("singular candidate failed");
                return v;
            }
        }
    return std::nullopt;
}

std::optional<Vec> singular_in(const SubSpace& S) {
    const std::size_t k = S.basis.size();
    if (k == 0) return std::nullopt;
    const FieldSpec& f = S.V->field();
    const std::size_t span_bits = k * f.degree();
    if (span_bits <= 24) {
        const std::uint64_t count = std::uint64_t(1) << span_bits;
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            Vec coef = Vec::from_index(f, k, idx);
            Vec v(f, S.V->dim());
            for (std::size_t i = 0; i < k; ++i)
                if (coef[i]) v.add_scaled(S.basis[i], coef[i]);
            if (S.q(v) == 0 && !v.is_zero()) return v;
        }
        return std::nullopt;
    }
    return singular_constructive(S);
}

// Basis of {x in span(basis) : <x, c> = 0 for all c in constraints}.
std::vector<Vec> perp_in_span(const QuadSpace& V, const std::vector<Vec>& basis,
                              const std::vector<Vec>& constraints) {
    const FieldSpec& f = V.field();
    Mat sys(f, constraints.size(), basis.size());
    for (std::size_t i = 0; i < constraints.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            sys.set(i, j, V.bilinear_bits(basis[j], constraints[i]));
    std::vector<Vec> out;
    for (const auto& coef : sys.kernel_basis()) {
        Vec v(f, V.dim());
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (coef[j]) v.add_scaled(basis[j], coef[j]);
        out.push_back(v);
    }
    return out;
}

struct WittDecomposition {
    std::vector<std::pair<Vec, Vec>> pairs; // hyperbolic: Q=0, Q=0, <,>=1
    std::vector<Vec> leftover;              // normalized terminal block
    SpaceKind kind;
};

WittDecomposition witt_decompose(const QuadSpace& V) {
    if (!V.is_nondegenerate()) throw input_error("Witt decomposition needs a non-degenerate space");
    const FieldSpec& f = V.field();
    WittDecomposition out{{}, {}, SpaceKind::plus};
    std::vector<Vec> sub;
    for (std::size_t i = 0; i < V.dim(); ++i) sub.push_back(Vec::unit(f, V.dim(), i));

    while (true) {
        auto v = singular_in(SubSpace{&V, sub});
        if (!v) break;
        // partner with <v,w> = 1 exists since v is outside the radical
        Vec w(f, V.dim());
        bool found = false;
        for (const auto& b : sub) {
            const std::uint32_t c = V.bilinear_bits(*v, b);
            if (c) {
                w = b.scaled(f.inv(c));
                found = true;
                break;
            }
        }
        if (!found) throw construction_error("singular vector fell into the radical");
        w.add_scaled(*v, V.q_bits(w)); // kill Q(w)
        if (V.q_bits(*v) != 0 || V.q_bits(w) != 0 || V.bilinear_bits(*v, w) != 1)
            throw construction_error("hyperbolic normalization failed");
        out.pairs.emplace_back(*v, w);
        sub = perp_in_span(V, sub, {*v, w});
    }

    if (sub.empty()) {
        out.kind = SpaceKind::plus;
    } else if (sub.size() == 1) {
        out.kind = SpaceKind::odd;
        // scale the defective line to Q = 1
        Vec r = sub[0];
        r = r.scaled(f.sqrt(f.inv(V.q_bits(r))));
        if (V.q_bits(r) != 1) throw construction_error("radical normalization failed");
        out.leftover.push_back(r);
    } else if (sub.size() == 2) {
        out.kind = SpaceKind::minus;
        // anisotropic plane: basis (u, w) with Q(u)=1, <u,w>=1, Q(w)=delta
        Vec u = sub[0].scaled(f.sqrt(f.inv(V.q_bits(sub[0]))));
        std::uint32_t c = V.bilinear_bits(u, sub[1]);
        if (c == 0) throw construction_error("anisotropic plane with orthogonal basis");
        Vec w = sub[1].scaled(f.inv(c));
        auto s = f.artin_schreier_root(f.add(f.delta(), V.q_bits(w)));
        if (!s) throw construction_error("anisotropic normalization: no Artin-Schreier root");
        w.add_scaled(u, *s);
        if (V.q_bits(u) != 1 || V.bilinear_bits(u, w) != 1 || V.q_bits(w) != f.delta())
            throw construction_error("anisotropic normalization failed");
        out.leftover.push_back(u);
        out.leftover.push_back(w);
    } else {
        throw construction_error("Witt recursion terminated with dim > 2");
    }
    return out;
}

} // namespace

std::optional<Vec> singular_vector_in_span(const QuadSpace& V, const std::vector<Vec>& basis) {
    return singular_in(SubSpace{&V, basis});
}

SpaceKind QuadSpace::witt_type() const { return witt_decompose(*this).kind; }

Mat QuadSpace::isometry_from_standard() const {
    WittDecomposition d = witt_decompose(*this);
    Mat p(field(), dim_, dim_);
    std::size_t c = 0;
    for (const auto& [v, w] : d.pairs) {
        for (std::size_t i = 0; i < dim_; ++i) p.set(i, c, v[i]);
        ++c;
        for (std::size_t i = 0; i < dim_; ++i) p.set(i, c, w[i]);
        ++c;
    }
    for (const auto& v : d.leftover) {
        for (std::size_t i = 0; i < dim_; ++i) p.set(i, c, v[i]);
        ++c;
    }
    // columns are a basis, so p is invertible
    QuadSpace model = standard(d.kind, dim_, field());
    for (std::size_t j = 0; j < dim_; ++j) {
        if (q_bits(p.col_vec(j)) != model.q_bits(Vec::unit(field(), dim_, j)))
            throw construction_error("standardizing basis does not match the model form");
        for (std::size_t i = j + 1; i < dim_; ++i)
            if (bilinear_bits(p.col_vec(j), p.col_vec(i)) !=
                model.bilinear_bits(Vec::unit(field(), dim_, j), Vec::unit(field(), dim_, i)))
                throw construction_error("standardizing basis does not match the model form");
    }
    return p;
}

Mat QuadSpace::transvection(const Vec& v) const {
    const std::uint32_t qv = q_bits(v);
    if (qv == 0) throw input_error("transvection needs Q(v) != 0");
    const FieldSpec& f = field();
    const std::uint32_t iq = f.inv(qv);
    Mat t = Mat::identity(f, dim_);
    Vec gv = gram_ * v; // <e_j, v> = (gram v)[j]
    for (std::size_t j = 0; j < dim_; ++j) {
        const std::uint32_t c = f.mul(iq, gv[j]);
        if (!c) continue;
        for (std::size_t i = 0; i < dim_; ++i) t.add_at(i, j, f.mul(c, v[i]));
    }
    return t;
}

bool QuadSpace::is_orthogonal(const Mat& g) const {
    if (g.rows() != dim_ || g.cols() != dim_ || g.field() != field()) return false;
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec gj = g.col_vec(j);
        if (q_bits(gj) != upper_(j, j)) return false;
        for (std::size_t i = j + 1; i < dim_; ++i)
            if (bilinear_bits(gj, g.col_vec(i)) != gram_(j, i)) return false;
    }
    return true;
}

unsigned QuadSpace::dickson(const Mat& g) const {
    if (!is_orthogonal(g)) throw input_error("Dickson invariant of a non-orthogonal matrix");
    return unsigned((g + Mat::identity(field(), dim_)).rank() % 2);
}

std::vector<Mat> QuadSpace::lie_algebra_basis() const {
    if (!is_nondegenerate()) throw input_error("o(V) basis needs a non-degenerate space");
    const FieldSpec& f = field();
    const std::size_t n2 = dim_ * dim_;
    // unknown x flattened row-major; constraints:
    //   <x e_i, e_i> = 0; <x e_i, e_j> = <x e_j, e_i> (i < j); tr x = 0
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::size_t i = 0; i < dim_; ++i) {
        std::vector<std::uint32_t> row(n2, 0);
        for (std::size_t a = 0; a < dim_; ++a) row[a * dim_ + i] = gram_(a, i);
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            std::vector<std::uint32_t> row(n2, 0);
            for (std::size_t a = 0; a < dim_; ++a) {
                row[a * dim_ + i] ^= gram_(a, j);
                row[a * dim_ + j] ^= gram_(a, i);
            }
            rows.push_back(std::move(row));
        }
    {
        std::vector<std::uint32_t> row(n2, 0);
        for (std::size_t i = 0; i < dim_; ++i) row[i * dim_ + i] = 1;
        rows.push_back(std::move(row));
    }
    Mat sys(f, rows.size(), n2);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n2; ++j) sys.set(i, j, rows[i][j]);
    std::vector<Mat> basis;
    for (const auto& k : sys.kernel_basis()) {
        Mat x(f, dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) x.set(i, j, k[i * dim_ + j]);
        basis.push_back(std::move(x));
    }
    return basis;
}

bool QuadSpace::in_lie_algebra(const Mat& x) const {
    if (x.rows() != dim_ || x.cols() != dim_ || x.field() != field()) return false;
    if (x.trace_bits() != 0) return false;
    for (std::size_t i = 0; i < dim_; ++i) {
        Vec xi = x.col_vec(i); // x e_i
        if (bilinear_bits(xi, Vec::unit(field(), dim_, i)) != 0) return false;
        for (std::size_t j = i + 1; j < dim_; ++j)
            if (bilinear_bits(xi, Vec::unit(field(), dim_, j)) !=
                bilinear_bits(x.col_vec(j), Vec::unit(field(), dim_, i)))
                return false;
    }
    return true;
}

} // namespace nilp2
