#include "nilp2/gfield.hpp"

#include "nilp2/errors.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace nilp2 {
namespace {

int poly_degree(std::uint64_t p) {
    int d = -1;
    while (p) { ++d; p >>= 1; }
    return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = poly_degree(m);
    int da = poly_degree(a);
    while (da >= dm) {
        a ^= m << (da - dm);
        da = poly_degree(a);
    }
    return a;
}

std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

// Trial division against every polynomial of lower degree (>= 1).
bool poly_irreducible(std::uint32_t m, unsigned e) {
    if (poly_degree(m) != int(e)) return false;
    for (std::uint32_t d = 2; d < (1u << e); ++d)
        if (poly_mod(m, d) == 0) return false;
    return true;
}

// Default moduli: lexicographically smallest irreducible of each degree.
// Frozen so that all censuses are reproducible bit for bit; the constructor
// re-checks irreducibility anyway.
constexpr std::uint32_t k_default_moduli[FieldSpec::max_degree + 1] = {
    0,       0x2,    0x7,    0xb,    0x13,   0x25,    0x43,   0x83,
    0x11b,   0x203,  0x409,  0x805,  0x1009, 0x201b,  0x4021, 0x8003,
    0x1002b,
};

std::map<unsigned, std::uint32_t> parse_env_table(const char* text) {
    std::map<unsigned, std::uint32_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw input_error("NILP2_FIELD_TABLE: expected 'degree:hexmod' in '" + item + "'");
        unsigned e = std::stoul(item.substr(0, colon));
        std::uint32_t mod = std::stoul(item.substr(colon + 1), nullptr, 16);
        out[e] = mod;
    }
    return out;
}

const std::map<unsigned, std::uint32_t>& env_overrides() {
    static const std::map<unsigned, std::uint32_t> table = [] {
        const char* text = std::getenv("NILP2_FIELD_TABLE");
        return text ? parse_env_table(text) : std::map<unsigned, std::uint32_t>{};
    }();
    return table;
}

} // namespace

FieldSpec::FieldSpec(unsigned e, std::uint32_t modulus) : e_(e), mod_(modulus) {
    if (e < 1 || e > max_degree)
        throw capacity_error("field degree " + std::to_string(e) + " outside supported range 1.." +
                             std::to_string(max_degree));
    if (!poly_irreducible(modulus, e))
        throw input_error("modulus is not an irreducible polynomial of degree " + std::to_string(e));

    if (e <= 8) {
        const std::uint32_t q = 1u << e;
        mul_table_.resize(std::size_t(q) * q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                mul_table_[(std::size_t(a) << e) | b] =
                    std::uint16_t(poly_mod(poly_mul(a, b), mod_));
    }

    // delta: least trace-1 element.  For e <= 8, cross-check exhaustively
    // that it avoids the Artin-Schreier image {x + x^2}.
    const std::uint32_t q = 1u << e;
    for (std::uint32_t a = 0; a < q; ++a) {
        if (trace(a) == 1) { delta_ = a; break; }
    }
    if (e <= 8) {
        for (std::uint32_t x = 0; x < q; ++x)
            if (delta_ == add(x, mul(x, x)))
                throw construction_error("delta lies in the Artin-Schreier image");
    }
}

std::uint32_t FieldSpec::mul_slow(std::uint32_t a, std::uint32_t b) const {
    return std::uint32_t(poly_mod(poly_mul(a, b), mod_));
}

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t n) const {
    std::uint32_t r = 1, x = a;
    while (n) {
        if (n & 1) r = mul(r, x);
        x = mul(x, x);
        n >>= 1;
    }
    return r;
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a == 0) throw input_error("division by zero in " + tag());
    return pow(a, order() - 2);
}

std::uint32_t FieldSpec::sqrt(std::uint32_t a) const {
    return pow(a, std::uint64_t(1) << (e_ - 1));
}

unsigned FieldSpec::trace(std::uint32_t a) const {
    std::uint32_t t = 0, x = a;
    for (unsigned i = 0; i < e_; ++i) {
        t ^= x;
        x = mul(x, x);
    }
    if (t != 0 && t != 1) throw construction_error("trace escaped GF(2)");
    return t;
}

std::optional<std::uint32_t> FieldSpec::artin_schreier_root(std::uint32_t a) const {
    // s -> s^2 + s is GF(2)-linear in the coefficients of s; solve by
    // elimination on the e x e bit matrix whose columns are images of t^i.
    std::vector<std::uint32_t> col(e_);
    for (unsigned i = 0; i < e_; ++i) {
        std::uint32_t b = 1u << i;
        col[i] = add(mul(b, b), b);
    }
    std::uint32_t sol = 0, rhs = a;
    std::vector<std::uint32_t> basis = col, pre(e_);
    for (unsigned i = 0; i < e_; ++i) pre[i] = 1u << i;
    // Gaussian elimination, tracking preimages.  The map has a kernel {0,1},
    // so exactly one bit column lacks a pivot.
    unsigned row = 0;
    for (unsigned bit = 0; bit < e_ && row < e_; ++bit) {
        unsigned piv = e_;
        for (unsigned i = row; i < e_; ++i)
            if (basis[i] >> bit & 1) { piv = i; break; }
        if (piv == e_) continue;
        std::swap(basis[row], basis[piv]);
        std::swap(pre[row], pre[piv]);
        for (unsigned i = 0; i < e_; ++i)
            if (i != row && (basis[i] >> bit & 1)) {
                basis[i] ^= basis[row];
                pre[i] ^= pre[row];
            }
        if (rhs >> bit & 1) {
            rhs ^= basis[row];
            sol ^= pre[row];
        }
        ++row;
    }
    if (rhs != 0) return std::nullopt;
    return sol;
}

std::string FieldSpec::tag() const {
    std::ostringstream out;
    out << "q=2^" << e_ << ",mod=0x" << std::hex << mod_;
    return out.str();
}

std::uint32_t FieldSpec::default_modulus(unsigned degree) {
    if (degree < 1 || degree > max_degree)
        throw capacity_error("field degree " + std::to_string(degree) +
                             " outside supported range 1.." + std::to_string(max_degree));
    auto it = env_overrides().find(degree);
    return it != env_overrides().end() ? it->second : k_default_moduli[degree];
}

const FieldSpec& FieldSpec::get(unsigned degree) {
    return get(degree, default_modulus(degree));
}

const FieldSpec& FieldSpec::get(unsigned degree, std::uint32_t modulus) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, std::uint32_t>, std::unique_ptr<FieldSpec>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(degree, modulus);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(degree, modulus))).first;
    return *it->second;
}

const FieldSpec& FieldElem::spec() const {
    if (!spec_) throw input_error("use of an unattached field element");
    return *spec_;
}

namespace {
const FieldSpec& common_spec(const FieldElem& x, const FieldElem& y) {
    if (x.spec() != y.spec())
        throw input_error("incompatible fields: " + x.spec().tag() + " vs " + y.spec().tag());
    return x.spec();
}
} // namespace

FieldElem FieldElem::operator+(const FieldElem& o) const {
    const FieldSpec& f = common_spec(*this, o);
    return FieldElem(f.add(bits_, o.bits_), f);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    const FieldSpec& f = common_spec(*this, o);
    return FieldElem(f.mul(bits_, o.bits_), f);
}

FieldElem FieldElem::inverse() const { return FieldElem(spec().inv(bits_), spec()); }

bool FieldElem::operator==(const FieldElem& o) const {
    return common_spec(*this, o), bits_ == o.bits_;
}

FieldElem add(const FieldElem& x, const FieldElem& y) { return x + y; }
FieldElem mul(const FieldElem& x, const FieldElem& y) { return x * y; }
FieldElem inv(const FieldElem& x) { return x.inverse(); }
unsigned abs_trace(const FieldElem& x) { return x.spec().trace(x.bits()); }
FieldElem find_delta(const FieldSpec& spec) { return FieldElem(spec.delta(), spec); }

std::vector<FieldElem> all_elements(const FieldSpec& spec) {
    std::vector<FieldElem> out;
    out.reserve(spec.order());
    for (std::uint32_t a = 0; a < spec.order(); ++a) out.emplace_back(a, spec);
    return out;
}

} // namespace nilp2
