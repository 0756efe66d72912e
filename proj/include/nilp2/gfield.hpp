#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nilp2 {

/// Arithmetic context for GF(2^e), 1 <= e <= 16.  Elements are bit patterns:
/// bit i is the coefficient of t^i in the residue class mod the modulus
/// polynomial.  Instances are interned and immutable; obtain them through
/// FieldSpec::get and compare by value.
class FieldSpec {
public:
    static constexpr unsigned max_degree = 16;

    /// Interned field with the default modulus for this degree.  The default
    /// table holds, per degree, the lexicographically smallest irreducible
    /// polynomial (ordered by the bit encoding); entries can be overridden
    /// with the NILP2_FIELD_TABLE environment variable ("e:hex,e:hex,...").
    static const FieldSpec& get(unsigned degree);
    /// Interned field with an explicit modulus (checked for irreducibility).
    static const FieldSpec& get(unsigned degree, std::uint32_t modulus);
    static std::uint32_t default_modulus(unsigned degree);

    unsigned degree() const { return e_; }
    std::uint32_t order() const { return 1u << e_; }
    std::uint32_t modulus() const { return mod_; }

    // Raw operations on bit patterns.  Addition is XOR.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (mul_table_.empty()) return mul_slow(a, b);
        return mul_table_[(std::size_t(a) << e_) | b];
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;
    /// Multiplicative inverse, computed as a^(2^e - 2).  Throws on 0.
    std::uint32_t inv(std::uint32_t a) const;
    /// Frobenius is bijective, so square roots are exact: a^(2^(e-1)).
    std::uint32_t sqrt(std::uint32_t a) const;
    /// Absolute trace sum_{i<e} a^(2^i), landing in {0,1}.
    unsigned trace(std::uint32_t a) const;
    /// Least element (in bit-pattern order) with trace 1, i.e. outside the
    /// Artin-Schreier image {x + x^2}.  Exhaustively verified for e <= 8.
    std::uint32_t delta() const { return delta_; }
    /// A root of s^2 + s = a, if one exists (iff trace(a) = 0).
    std::optional<std::uint32_t> artin_schreier_root(std::uint32_t a) const;

    /// Serialization tag used in all JSON outputs: "q=2^e,mod=0x<hex)".
    std::string tag() const;

    bool operator==(const FieldSpec& o) const { return e_ == o.e_ && mod_ == o.mod_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
    FieldSpec(unsigned e, std::uint32_t modulus);
    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

    unsigned e_;
    std::uint32_t mod_;
    std::uint32_t delta_ = 0;
    std::vector<std::uint16_t> mul_table_; // built for e <= 8
};

/// Value-semantic element of an interned FieldSpec.  Hashable; operations on
/// elements of different fields throw input_error.
class FieldElem {
public:
    FieldElem() = default; // unattached zero; usable only via assignment
    FieldElem(std::uint32_t bits, const FieldSpec& spec) : bits_(bits), spec_(&spec) {}

    std::uint32_t bits() const { return bits_; }
    const FieldSpec& spec() const;
    bool is_zero() const { return bits_ == 0; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem inverse() const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

private:
    std::uint32_t bits_ = 0;
    const FieldSpec* spec_ = nullptr;
};

FieldElem add(const FieldElem& x, const FieldElem& y);
FieldElem mul(const FieldElem& x, const FieldElem& y);
FieldElem inv(const FieldElem& x);
unsigned abs_trace(const FieldElem& x);
FieldElem find_delta(const FieldSpec& spec);

/// All q elements in the fixed enumeration order: 0, 1, t, t+1, ...
std::vector<FieldElem> all_elements(const FieldSpec& spec);

} // namespace nilp2

template <> struct std::hash<nilp2::FieldElem> {
    std::size_t operator()(const nilp2::FieldElem& x) const noexcept {
        return std::hash<std::uint64_t>{}(
            (std::uint64_t(x.spec().degree()) << 48) ^
            (std::uint64_t(x.spec().modulus()) << 24) ^ x.bits());
    }
};
