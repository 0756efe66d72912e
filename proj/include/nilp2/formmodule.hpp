#pragma once

#include "nilp2/quadspace.hpp"
#include "nilp2/symbol.hpp"

#include <map>
#include <string>
#include <vector>

namespace nilp2 {

/// chi values at the distinct Jordan parts (the symbol's domain); the full
/// index function on N is computable on demand via chi_value.
class IndexFn {
public:
    IndexFn() = default;
    explicit IndexFn(std::map<int, int, std::greater<int>> values) : values_(std::move(values)) {}
    const std::map<int, int, std::greater<int>>& values() const { return values_; }
    int at(int part) const;
    bool operator==(const IndexFn& o) const { return values_ == o.values_; }

private:
    std::map<int, int, std::greater<int>> values_;
};

/// A quadratic space with a nilpotent self-adjoint endomorphism.  Jordan type
/// and index function are computed at construction; degenerate spaces are
/// allowed (orthogonal sums can produce them) but refuse a symbol.
class FormModule {
public:
    FormModule(QuadSpace space, Mat t);

    const QuadSpace& space() const { return space_; }
    const Mat& endo() const { return t_; }
    const Partition& jordan() const { return jordan_; }
    const IndexFn& chi() const { return chi_; }

private:
    QuadSpace space_;
    Mat t_;
    Partition jordan_;
    IndexFn chi_;
};

Partition jordan_type(const FormModule& m);
IndexFn index_function(const FormModule& m);
/// chi(part) for an arbitrary positive part, not just Jordan parts.
int chi_value(const QuadSpace& V, const Mat& t, int part);

/// Assembles the symbol; requires a non-degenerate space.
Symbol symbol_of(const FormModule& m);

FormModule orthogonal_sum(const FormModule& a, const FormModule& b);

struct IndecompSpec {
    enum class Family { W0, Wdelta, D };
    Family family;
    int l = 0; // unused for D
    int m = 0;
};

/// build_indecomposable output with the designated generators: v1 = e_0 and,
/// when mu2 > 0, v2 = e_mu1.
struct BuiltModule {
    FormModule mod;
    std::size_t mu1;
    std::size_t mu2;
};

/// Explicit matrices for the normalized indecomposables W_l^0(m), W_l^delta(m)
/// (delta from the field), D(m), on the basis (v1, T v1, ..., v2, T v2, ...).
BuiltModule build_indecomposable(const IndecompSpec& spec, const FieldSpec& field);

/// Truncated element of Hesselink's dual space E: finite map n -> coefficient
/// of t^{-n}; mu = 1 + max supported n.
struct CoeffProfile {
    std::map<int, std::uint32_t> coeff;
    bool even_only = false;
    int mu() const;
};

enum class AbstractCase { case_i, case_ii };

/// Recomputes Phi, Psi_1, Psi_2 from the matrices and classifies against the
/// two admissible shapes; a failure signals a construction bug.
AbstractCase check_abstract_constraints(const BuiltModule& b);

/// Synthesizes a module with the given symbol: D-block for the odd-multiplicity
/// parts, W-blocks for the rest, delta toggles at the masked admissible
/// indices.  Self-checks symbol_of(result) == s.
FormModule module_from_symbol(const Symbol& s, const FieldSpec& field, std::uint32_t mask = 0);
FormModule module_from_symbol(const Symbol& s, const FieldSpec& field, const std::string& mask_bits);

/// Conjugate m's endomorphism into o(target) through Witt standardizations.
/// Requires matching dimension, field, and kind.
Mat transport_endo(const FormModule& m, const QuadSpace& target);

} // namespace nilp2
