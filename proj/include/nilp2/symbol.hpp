#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace nilp2 {

/// Weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;
    int sum() const;
    bool operator==(const Partition& o) const { return parts == o.parts; }
};

/// All partitions of n in descending lexicographic order: (n), (n-1,1), ...
std::vector<Partition> partitions_of(int n);

/// One group (lambda)_chi^mult of a symbol.
struct SymbolEntry {
    int part;
    int index; // chi(part)
    int mult;
    bool operator==(const SymbolEntry& o) const {
        return part == o.part && index == o.index && mult == o.mult;
    }
};

/// Classification label of a nilpotent orbit over the algebraic closure:
/// groups in strictly descending part order.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::vector<SymbolEntry> entries);
    const std::vector<SymbolEntry>& entries() const { return entries_; }
    std::size_t groups() const { return entries_.size(); }
    int dim() const;
    bool operator==(const Symbol& o) const { return entries_ == o.entries_; }
    bool operator!=(const Symbol& o) const { return !(*this == o); }

private:
    std::vector<SymbolEntry> entries_;
};

/// Result of checking the four classification conditions.
struct SymbolValidity {
    bool ok = true;
    std::array<bool, 4> cond{true, true, true, true};
    std::string diagnostic; // empty when valid
};

SymbolValidity validate_symbol(const Symbol& s);
bool is_valid_symbol(const Symbol& s);

enum class SymbolParity { defective, nondefective };

/// All valid symbols of total dimension N, partitions in descending lex
/// order, index assignments in descending lex within each partition.
/// Throws when the requested parity does not match N.
std::vector<Symbol> enumerate_symbols(int N, SymbolParity parity);
std::vector<Symbol> enumerate_symbols(int N);

struct SplitCounts {
    int n1;
    int n2;
};

/// Cardinalities controlling how the closure class splits over F_q.
SplitCounts splitting_counts(const Symbol& s);

/// True when chi(lambda_i) = lambda_i / 2 for every group.
bool all_chi_half(const Symbol& s);

/// Number of F_q isomorphism classes in the closure class: 2^n1 when the
/// total dimension is odd (defective space), 2^n2 when even.
long long fq_class_count(const Symbol& s);

struct FqOrbitCounts {
    long long odd = 0;
    long long plus = 0;
    long long minus = 0;
};

/// Per-space orbit counts over F_q for the group O.
FqOrbitCounts fq_orbit_counts(const Symbol& s);

/// Toggle positions (0-based group indices) admitting a delta variant;
/// their number is n1 for odd total dimension, n2 for even.
std::vector<std::size_t> admissible_toggle_indices(const Symbol& s);

/// Printer/parser for the grammar "(lambda)_chi^mult..." with ^1 omitted.
std::string to_string(const Symbol& s);
Symbol parse_symbol(std::string_view text);

} // namespace nilp2
