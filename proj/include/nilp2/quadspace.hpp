#pragma once

#include "nilp2/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilp2 {

/// Isomorphism type of a non-degenerate quadratic space over F_q:
/// plus / minus are the two even-dimensional types (Witt index n resp. n-1),
/// odd the defective odd-dimensional one.
enum class SpaceKind { odd, plus, minus };

const char* to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);

/// Quadratic space over GF(2^e): Q encoded by an upper-triangular matrix
/// (Q(x) = sum_{i<=j} upper[i][j] x_i x_j), bilinear form the polarization
/// <v,w> = Q(v+w) + Q(v) + Q(w) with Gram matrix upper + upper^T.
class QuadSpace {
public:
    static QuadSpace from_upper(Mat upper);
    static QuadSpace standard(SpaceKind kind, std::size_t N, const FieldSpec& field);

    std::size_t dim() const { return dim_; }
    const FieldSpec& field() const { return upper_.field(); }
    const Mat& upper() const { return upper_; }
    const Mat& gram() const { return gram_; }

    FieldElem q_eval(const Vec& v) const;
    std::uint32_t q_bits(const Vec& v) const;
    FieldElem bilinear(const Vec& v, const Vec& w) const;
    std::uint32_t bilinear_bits(const Vec& v, const Vec& w) const;

    /// Basis of the radical of the bilinear form (kernel of the Gram matrix).
    std::vector<Vec> radical() const;
    bool is_nondegenerate() const;
    bool is_defective() const;

    /// Witt classification by greedy hyperbolic splitting.  Requires a
    /// non-degenerate space.
    SpaceKind witt_type() const;
    /// Basis realizing an isometry from the standard space of the same kind
    /// onto this one: columns ordered as hyperbolic pairs first, then the
    /// normalized leftover (defective line with Q=1, or anisotropic pair
    /// (Q=1, <,>=1, Q=delta)).
    Mat isometry_from_standard() const;

    /// t_v: w -> w + (<w,v>/Q(v)) v.  Requires Q(v) != 0.
    Mat transvection(const Vec& v) const;

    /// Membership in O(V) as the polynomial identity Q(g v) = Q(v): checked
    /// coefficient-wise on basis vectors and pairs.
    bool is_orthogonal(const Mat& g) const;
    /// Dickson invariant rank(g + 1) mod 2; input must be orthogonal.
    unsigned dickson(const Mat& g) const;

    /// Basis of o(V) = {x : <xv,v> = 0 identically, tr x = 0}, the identity
    /// again imposed coefficient-wise.  Requires a non-degenerate space.
    std::vector<Mat> lie_algebra_basis() const;
    /// The defining identities of o(V), checkable without non-degeneracy.
    bool in_lie_algebra(const Mat& x) const;

    bool operator==(const QuadSpace& o) const { return upper_ == o.upper_; }

private:
    explicit QuadSpace(Mat upper);
    std::size_t dim_;
    Mat upper_;
    Mat gram_;
};

/// A nonzero singular vector (Q(v) = 0) in the span of `basis`, or nullopt if
/// none exists.  Exhaustive scan up to q^k <= 2^24 candidates, constructive
/// quadric solving beyond.
std::optional<Vec> singular_vector_in_span(const QuadSpace& V, const std::vector<Vec>& basis);

} // namespace nilp2
