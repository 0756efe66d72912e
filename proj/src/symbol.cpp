#include "nilp2/symbol.hpp"

#include "nilp2/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilp2 {

int Partition::sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

namespace {
void partitions_rec(int n, int maxp, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = std::min(n, maxp); first >= 1; --first) {
        cur.parts.push_back(first);
        partitions_rec(n - first, first, cur, out);
        cur.parts.pop_back();
    }
}
} // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw input_error("partitions of a negative integer");
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(n, n, cur, out);
    return out;
}

Symbol::Symbol(std::vector<SymbolEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].part < 1 || entries_[i].mult < 1)
            throw input_error("symbol group with non-positive part or multiplicity");
        if (i + 1 < entries_.size() && entries_[i].part <= entries_[i + 1].part)
            throw input_error("symbol parts must be strictly decreasing");
    }
}

int Symbol::dim() const {
    int d = 0;
    for (const auto& e : entries_) d += e.part * e.mult;
    return d;
}

SymbolValidity validate_symbol(const Symbol& s) {
    SymbolValidity v;
    std::ostringstream diag;
    const auto& es = s.entries();
    const std::size_t k = es.size();

    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (!(es[i].index >= es[i + 1].index &&
              es[i].part - es[i].index >= es[i + 1].part - es[i + 1].index)) {
            v.cond[0] = false;
            diag << "condition (i) violated at groups " << i + 1 << "," << i + 2 << "; ";
            break;
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!(es[i].part <= 2 * es[i].index && es[i].index <= es[i].part)) {
            v.cond[1] = false;
            diag << "condition (ii) violated: chi(" << es[i].part << ")=" << es[i].index << "; ";
            break;
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (es[i].mult % 2 == 1 && es[i].index != es[i].part) {
            v.cond[2] = false;
            diag << "condition (iii) violated: odd multiplicity at part " << es[i].part
                 << " needs chi=" << es[i].part << "; ";
            break;
        }
    }
    // (iv): parts with odd multiplicity must be {m, m-1} cut down to positives,
    // i.e. the empty set, {1}, or {m, m-1} with m >= 2.
    std::vector<int> odd;
    for (const auto& e : es)
        if (e.mult % 2 == 1) odd.push_back(e.part);
    const bool iv_ok = odd.empty() || (odd.size() == 1 && odd[0] == 1) ||
                       (odd.size() == 2 && odd[0] == odd[1] + 1);
    if (!iv_ok) {
        v.cond[3] = false;
        diag << "condition (iv) violated: odd-multiplicity part set {";
        for (std::size_t i = 0; i < odd.size(); ++i) diag << (i ? "," : "") << odd[i];
        diag << "} is not of the form {m,m-1}; ";
    }

    v.ok = v.cond[0] && v.cond[1] && v.cond[2] && v.cond[3];
    v.diagnostic = diag.str();
    return v;
}

bool is_valid_symbol(const Symbol& s) { return validate_symbol(s).ok; }

namespace {
void index_assignments(const std::vector<int>& parts, const std::vector<int>& mults,
                       std::size_t pos, std::vector<int>& chi, std::vector<Symbol>& out) {
    const std::size_t k = parts.size();
    if (pos == k) {
        std::vector<SymbolEntry> es;
        for (std::size_t i = 0; i < k; ++i) es.push_back({parts[i], chi[i], mults[i]});
        Symbol s(std::move(es));
        if (is_valid_symbol(s)) out.push_back(std::move(s));
        return;
    }
    const int lam = parts[pos];
    if (mults[pos] % 2 == 1) { // condition (iii) pins chi
        chi.push_back(lam);
        index_assignments(parts, mults, pos + 1, chi, out);
        chi.pop_back();
        return;
    }
    const int lo = (lam + 1) / 2; // smallest integer with lam <= 2*chi
    int hi = lam;
    if (pos > 0) { // prune with condition (i) against the previous group
        hi = std::min(hi, chi[pos - 1]);
    }
    for (int c = hi; c >= lo; --c) { // descending lex
        if (pos > 0 && parts[pos - 1] - chi[pos - 1] < lam - c) continue;
        chi.push_back(c);
        index_assignments(parts, mults, pos + 1, chi, out);
        chi.pop_back();
    }
}
} // namespace

std::vector<Symbol> enumerate_symbols(int N) {
    if (N < 1) throw input_error("symbol enumeration needs N >= 1");
    std::vector<Symbol> out;
    for (const auto& lam : partitions_of(N)) {
        std::vector<int> parts, mults;
        for (int p : lam.parts) {
            if (parts.empty() || parts.back() != p) {
                parts.push_back(p);
                mults.push_back(1);
            } else {
                ++mults.back();
            }
        }
        // condition (iv) depends on multiplicities only; filter early
        std::vector<int> odd;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (mults[i] % 2 == 1) odd.push_back(parts[i]);
        const bool iv_ok = odd.empty() || (odd.size() == 1 && odd[0] == 1) ||
                           (odd.size() == 2 && odd[0] == odd[1] + 1);
        if (!iv_ok) continue;
        std::vector<int> chi;
        index_assignments(parts, mults, 0, chi, out);
    }
    return out;
}

std::vector<Symbol> enumerate_symbols(int N, SymbolParity parity) {
    const bool want_odd = parity == SymbolParity::defective;
    if ((N % 2 == 1) != want_odd)
        throw input_error("dimension parity does not match requested kind: non-degenerate "
                          "spaces are defective exactly in odd dimension");
    return enumerate_symbols(N);
}

SplitCounts splitting_counts(const Symbol& s) {
    SymbolValidity v = validate_symbol(s);
    if (!v.ok) throw input_error("splitting counts of an invalid symbol: " + v.diagnostic);
    const auto& es = s.entries();
    const std::size_t k = es.size();
    auto chi = [&](std::size_t i) { return i < k ? es[i].index : 0; };
    SplitCounts out{0, 0};
    for (std::size_t i = 0; i < k; ++i) {
        const bool counted =
            chi(i) + chi(i + 1) <= es[i].part && 2 * es[i].index != es[i].part;
        if (counted) {
            ++out.n2;
            if (i + 1 < k) ++out.n1;
        }
    }
    return out;
}

bool all_chi_half(const Symbol& s) {
    for (const auto& e : s.entries())
        if (2 * e.index != e.part) return false;
    return true;
}

long long fq_class_count(const Symbol& s) {
    SplitCounts c = splitting_counts(s);
    return 1ll << (s.dim() % 2 == 1 ? c.n1 : c.n2);
}

FqOrbitCounts fq_orbit_counts(const Symbol& s) {
    SplitCounts c = splitting_counts(s);
    FqOrbitCounts out;
    if (s.dim() % 2 == 1) {
        out.odd = 1ll << c.n1;
    } else if (all_chi_half(s)) {
        out.plus = 1;
        out.minus = 0;
    } else {
        // n2 >= 1 whenever some chi differs from lambda/2
        out.plus = 1ll << (c.n2 - 1);
        out.minus = 1ll << (c.n2 - 1);
    }
    return out;
}

std::vector<std::size_t> admissible_toggle_indices(const Symbol& s) {
    SymbolValidity v = validate_symbol(s);
    if (!v.ok) throw input_error("toggle indices of an invalid symbol: " + v.diagnostic);
    const auto& es = s.entries();
    const std::size_t k = es.size();
    const bool defective = s.dim() % 2 == 1;
    auto chi = [&](std::size_t i) { return i < k ? es[i].index : 0; };
    std::vector<std::size_t> out;
    const std::size_t last = defective ? (k > 0 ? k - 1 : 0) : k;
    for (std::size_t i = 0; i < last; ++i)
        if (chi(i) + chi(i + 1) <= es[i].part && 2 * es[i].index != es[i].part)
            out.push_back(i);
    return out;
}

std::string to_string(const Symbol& s) {
    std::ostringstream out;
    for (const auto& e : s.entries()) {
        out << "(" << e.part << ")_" << e.index;
        if (e.mult > 1) out << "^" << e.mult;
    }
    return out.str();
}

namespace {
int parse_int(std::string_view text, std::size_t& pos, const char* what) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start)
        throw input_error(std::string("symbol parse error: expected ") + what + " at offset " +
                          std::to_string(start));
    return std::stoi(std::string(text.substr(start, pos - start)));
}
} // namespace

Symbol parse_symbol(std::string_view text) {
    std::vector<SymbolEntry> es;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw input_error("symbol parse error: expected '(' at offset " + std::to_string(pos));
        ++pos;
        const int part = parse_int(text, pos, "part");
        if (pos >= text.size() || text[pos] != ')')
            throw input_error("symbol parse error: expected ')' at offset " + std::to_string(pos));
        ++pos;
        if (pos >= text.size() || text[pos] != '_')
            throw input_error("symbol parse error: expected '_' at offset " + std::to_string(pos));
        ++pos;
        const int chi = parse_int(text, pos, "index");
        int mult = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            mult = parse_int(text, pos, "multiplicity");
        }
        es.push_back({part, chi, mult});
    }
    if (es.empty()) throw input_error("symbol parse error: empty symbol");
    return Symbol(std::move(es));
}

} // namespace nilp2
