#include "nilp2/linalg.hpp"

#include "nilp2/errors.hpp"

namespace nilp2 {

namespace {
const FieldSpec& common_field(const FieldSpec& a, const FieldSpec& b) {
    if (a != b) throw input_error("incompatible fields: " + a.tag() + " vs " + b.tag());
    return a;
}
} // namespace

Vec Vec::unit(const FieldSpec& f, std::size_t n, std::size_t i) {
    Vec v(f, n);
    v.set(i, 1);
    return v;
}

Vec Vec::from_index(const FieldSpec& f, std::size_t n, std::uint64_t idx) {
    Vec v(f, n);
    const std::uint64_t q = f.order();
    for (std::size_t j = n; j-- > 0;) {
        v.set(j, std::uint32_t(idx % q));
        idx /= q;
    }
    return v;
}

bool Vec::is_zero() const {
    for (auto x : v_)
        if (x) return false;
    return true;
}

Vec Vec::operator+(const Vec& o) const {
    common_field(*f_, *o.f_);
    if (size() != o.size()) throw input_error("vector dimension mismatch");
    Vec r(*f_, size());
    for (std::size_t i = 0; i < size(); ++i) r.v_[i] = v_[i] ^ o.v_[i];
    return r;
}

Vec Vec::scaled(std::uint32_t c) const {
    Vec r(*f_, size());
    for (std::size_t i = 0; i < size(); ++i) r.v_[i] = f_->mul(v_[i], c);
    return r;
}

void Vec::add_scaled(const Vec& o, std::uint32_t c) {
    for (std::size_t i = 0; i < size(); ++i) v_[i] ^= f_->mul(o.v_[i], c);
}

Mat Mat::identity(const FieldSpec& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    common_field(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix dimension mismatch");
    Mat r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] ^ o.a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    common_field(*f_, *o.f_);
    if (cols_ != o.rows_) throw input_error("matrix dimension mismatch");
    Mat r(*f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint32_t aik = a_[i * cols_ + k];
            if (!aik) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.a_[i * o.cols_ + j] ^= f_->mul(aik, o.a_[k * o.cols_ + j]);
        }
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    common_field(*f_, v.field());
    if (cols_ != v.size()) throw input_error("matrix/vector dimension mismatch");
    Vec r(*f_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s ^= f_->mul(a_[i * cols_ + j], v[j]);
        r.set(i, s);
    }
    return r;
}

Mat Mat::transpose() const {
    Mat r(*f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, a_[i * cols_ + j]);
    return r;
}

Mat Mat::pow(std::uint64_t k) const {
    if (rows_ != cols_) throw input_error("pow needs a square matrix");
    Mat r = identity(*f_, rows_);
    Mat x = *this;
    while (k) {
        if (k & 1) r = r * x;
        x = x * x;
        k >>= 1;
    }
    return r;
}

std::uint32_t Mat::trace_bits() const {
    std::uint32_t t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t ^= a_[i * cols_ + i];
    return t;
}

bool Mat::is_zero() const {
    for (auto x : a_)
        if (x) return false;
    return true;
}

Vec Mat::row_vec(std::size_t i) const {
    Vec v(*f_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.set(j, a_[i * cols_ + j]);
    return v;
}

Vec Mat::col_vec(std::size_t j) const {
    Vec v(*f_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.set(i, a_[i * cols_ + j]);
    return v;
}

Rref rref(const Mat& a) {
    Rref out{a, {}};
    Mat& m = out.m;
    const FieldSpec& f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (m(i, c)) { piv = i; break; }
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                auto t = m(r, j);
                m.set(r, j, m(piv, j));
                m.set(piv, j, t);
            }
        const std::uint32_t ipiv = f.inv(m(r, c));
        for (std::size_t j = 0; j < m.cols(); ++j) m.set(r, j, f.mul(ipiv, m(r, j)));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const std::uint32_t ci = m(i, c);
            if (!ci) continue;
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.set(i, j, f.add(m(i, j), f.mul(ci, m(r, j))));
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::size_t Mat::rank() const { return rref(*this).pivots.size(); }

Mat Mat::inverse() const {
    if (rows_ != cols_) throw input_error("inverse needs a square matrix");
    Mat aug(*f_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, (*this)(i, j));
        aug.set(i, cols_ + i, 1);
    }
    Rref e = rref(aug);
    for (std::size_t i = 0; i < rows_; ++i)
        if (i >= e.pivots.size() || e.pivots[i] != i) throw input_error("matrix is singular");
    Mat inv(*f_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.set(i, j, e.m(i, cols_ + j));
    return inv;
}

std::vector<Vec> Mat::kernel_basis() const {
    Rref e = rref(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        Vec v(*f_, cols_);
        v.set(c, 1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v.set(e.pivots[r], e.m(r, c)); // char 2: negation is identity
        basis.push_back(v);
    }
    return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.rows() != b.size()) throw input_error("solve dimension mismatch");
    const FieldSpec& f = a.field();
    Mat aug(f, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a(i, j));
        aug.set(i, a.cols(), b[i]);
    }
    Rref e = rref(aug);
    Vec x(f, a.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return std::nullopt; // pivot in the rhs column
        x.set(e.pivots[r], e.m(r, a.cols()));
    }
    return x;
}

bool is_nilpotent(const Mat& x) {
    if (x.rows() != x.cols()) throw input_error("nilpotency needs a square matrix");
    if (x.rows() == 0) return true;
    Mat m = x;
    std::size_t covered = 1;
    while (covered < x.rows()) {
        m = m * m;
        covered *= 2;
    }
    return m.is_zero();
}

SpanSolver::SpanSolver(const std::vector<Mat>& basis)
    : basis_(basis),
      echelon_(basis.empty() ? Mat(FieldSpec::get(1), 0, 0)
                             : Mat(basis[0].field(), basis.size(),
                                   basis[0].rows() * basis[0].cols())),
      mix_(basis.empty() ? Mat(FieldSpec::get(1), 0, 0)
                         : Mat(basis[0].field(), basis.size(), basis.size())) {
    if (basis_.empty()) return;
    const FieldSpec& f = basis_[0].field();
    const std::size_t flat = basis_[0].rows() * basis_[0].cols();
    const std::size_t k = basis_.size();
    // Row i of [echelon | mix] starts as [flatten(basis[i]) | e_i].
    Mat aug(f, k, flat + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < flat; ++p) aug.set(i, p, basis_[i].raw()[p]);
        aug.set(i, flat + i, 1);
    }
    Rref e = rref(aug);
    for (auto c : e.pivots)
        if (c >= flat) throw input_error("span basis is linearly dependent");
    pivots_ = e.pivots;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t p = 0; p < flat; ++p) echelon_.set(i, p, e.m(i, p));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) mix_.set(i, j, e.m(i, flat + j));
    if (pivots_.size() != k) throw input_error("span basis is linearly dependent");
}

std::optional<std::vector<std::uint32_t>> SpanSolver::coords(const Mat& x) const {
    if (basis_.empty()) {
        if (x.is_zero()) return std::vector<std::uint32_t>{};
        return std::nullopt;
    }
    const FieldSpec& f = basis_[0].field();
    const std::size_t flat = echelon_.cols();
    std::vector<std::uint32_t> residue = x.raw();
    if (residue.size() != flat) throw input_error("span solver dimension mismatch");
    std::vector<std::uint32_t> combo(basis_.size(), 0);
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const std::uint32_t c = residue[pivots_[r]];
        if (!c) continue;
        for (std::size_t p = 0; p < flat; ++p)
            residue[p] ^= f.mul(c, echelon_(r, p));
        for (std::size_t j = 0; j < basis_.size(); ++j)
            combo[j] ^= f.mul(c, mix_(r, j));
    }
    for (auto v : residue)
        if (v) return std::nullopt;
    return combo;
}

Mat SpanSolver::combine(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != basis_.size()) throw input_error("coefficient count mismatch");
    if (basis_.empty()) throw input_error("cannot combine over an empty basis");
    Mat r(basis_[0].field(), basis_[0].rows(), basis_[0].cols());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i])
            for (std::size_t p = 0; p < r.raw().size(); ++p)
                r.add_at(p / r.cols(), p % r.cols(),
                         r.field().mul(coeffs[i], basis_[i].raw()[p]));
    return r;
}

} // namespace nilp2
