#include "ran/code.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ran {

namespace {

void check_symbol(const Code& code, Symbol i) {
    if (i < 1 || static_cast<int>(i) > code.dim + 1)
        throw std::invalid_argument("symbol out of alphabet [1, d+1]");
}

// Index just past the cut of one greedy hop on code[0..len): scanning from
// the right, the hop ends at the first position where all dim+1 symbols have
// been seen, or consumes the whole prefix when the coupon set stays
// incomplete. Returns the new prefix length.
std::size_t greedy_cut(const std::vector<Symbol>& s, std::size_t len, int dim,
                       std::vector<std::uint8_t>& seen) {
    std::fill(seen.begin(), seen.end(), 0);
    int distinct = 0;
    for (std::size_t j = len; j-- > 0;) {
        if (!seen[s[j]]) {
            seen[s[j]] = 1;
            if (++distinct == dim + 1) return j;
        }
    }
    return 0;
}

}  // namespace

std::string to_string(const Code& code) {
    std::string out;
    if (code.dim + 1 <= 9) {
        out.reserve(code.size());
        for (Symbol s : code.symbols) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(static_cast<int>(code.symbols[i]));
        }
    }
    return out;
}

Code parse_code(const std::string& text, int dim) {
    Code code;
    code.dim = dim;
    if (text.empty()) return code;
    if (dim + 1 <= 9) {
        code.symbols.reserve(text.size());
        for (char c : text) {
            if (c < '1' || c > '0' + dim + 1)
                throw std::invalid_argument("code symbol out of range: " + text);
            code.symbols.push_back(static_cast<Symbol>(c - '0'));
        }
    } else {
        const char* p = text.data();
        const char* end = p + text.size();
        while (p < end) {
            int v = 0;
            auto [q, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || v < 1 || v > dim + 1)
                throw std::invalid_argument("code symbol out of range: " + text);
            code.symbols.push_back(static_cast<Symbol>(v));
            p = (q < end && *q == ',') ? q + 1 : q;
        }
    }
    return code;
}

std::optional<std::size_t> last_occurrence(const Code& code, Symbol i) {
    check_symbol(code, i);
    for (std::size_t p = code.size(); p-- > 0;)
        if (code.symbols[p] == i) return p + 1;
    return std::nullopt;
}

std::optional<Code> cut_t(const Code& code, Symbol i) {
    auto pos = last_occurrence(code, i);
    if (!pos) return std::nullopt;
    return code.prefix(*pos - 1);
}

std::optional<Code> postfix_p(const Code& code, Symbol i) {
    auto pos = last_occurrence(code, i);
    if (!pos) return std::nullopt;
    return code.suffix_from(*pos - 1);
}

std::size_t max_hop(const Code& code) {
    if (code.empty()) throw std::invalid_argument("max_hop of empty code");
    std::vector<std::uint8_t> seen(code.dim + 2, 0);
    return code.size() - greedy_cut(code.symbols, code.size(), code.dim, seen);
}

std::size_t block_count(const Code& code) {
    std::vector<std::uint8_t> seen(code.dim + 2, 0);
    std::size_t len = code.size();
    std::size_t n = 0;
    while (len > 0) {
        len = greedy_cut(code.symbols, len, code.dim, seen);
        ++n;
    }
    return n;
}

BlockDecomposition greedy_blocks(const Code& code) {
    BlockDecomposition out;
    std::vector<std::uint8_t> seen(code.dim + 2, 0);
    std::size_t len = code.size();
    while (len > 0) {
        std::size_t cut = greedy_cut(code.symbols, len, code.dim, seen);
        out.blocks.push_back(Code(std::vector<Symbol>(code.symbols.begin() + cut,
                                                      code.symbols.begin() + len),
                                  code.dim));
        len = cut;
    }
    std::reverse(out.blocks.begin(), out.blocks.end());
    out.count = out.blocks.size();
    return out;
}

namespace {

constexpr std::size_t kInf = static_cast<std::size_t>(-1) / 2;

// sb[j] = minimal number of strict blocks covering code[j..m), sb[m] = 0.
// A block is strict when its leading symbol does not recur inside it.
std::vector<std::size_t> strict_suffix_blocks(const Code& code) {
    const std::size_t m = code.size();
    std::vector<std::size_t> sb(m + 1, kInf);
    sb[m] = 0;
    for (std::size_t j = m; j-- > 0;) {
        std::size_t best = kInf;
        for (std::size_t e = j; e < m; ++e) {
            if (e > j && code[e] == code[j]) break;  // leading symbol recurs
            if (sb[e + 1] < best) best = sb[e + 1];
        }
        if (best < kInf) sb[j] = best + 1;
    }
    return sb;
}

}  // namespace

std::size_t min_blocks_oracle(const Code& code, bool leftmost_unrestricted) {
    const std::size_t m = code.size();
    if (m == 0) return 0;
    auto sb = strict_suffix_blocks(code);
    std::size_t best = sb[0];
    if (leftmost_unrestricted) {
        // Leftmost block code[0..j) allowed while it misses some symbol.
        std::vector<std::uint8_t> seen(code.dim + 2, 0);
        int distinct = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            if (!seen[code[j - 1]]) {
                seen[code[j - 1]] = 1;
                ++distinct;
            }
            if (distinct == code.dim + 1) break;  // full alphabet: not a truncated jump
            if (sb[j] < kInf && sb[j] + 1 < best) best = sb[j] + 1;
        }
    }
    return best;
}

SplitCodes common_ancestor(const Code& a, const Code& b) {
    std::size_t k = 0;
    const std::size_t lim = std::min(a.size(), b.size());
    while (k < lim && a[k] == b[k]) ++k;
    return SplitCodes{a.prefix(k), a.suffix_from(k), b.suffix_from(k)};
}

std::size_t ClimbProfile::best() const {
    std::size_t b = to_ancestor;
    for (std::size_t v : overshoot) b = std::min(b, v);
    return b;
}

ClimbProfile climb_profile(const Code& tail) {
    const std::size_t m = tail.size();
    ClimbProfile prof;
    prof.overshoot.assign(tail.dim + 1, ClimbProfile::npos);
    if (m == 0) {
        prof.to_ancestor = 0;
        return prof;
    }
    auto sb = strict_suffix_blocks(tail);
    prof.to_ancestor = sb[0];
    // rolling minimum of sb[j] over j = 1..; symbol i allows final prefixes
    // tail[0..j) with j up to the first occurrence of i (or m when absent).
    std::vector<std::size_t> first_occ(tail.dim + 2, m);
    for (std::size_t p = m; p-- > 0;) first_occ[tail[p]] = p;
    std::vector<std::size_t> run_min(m + 1, kInf);
    std::size_t cur = kInf;
    for (std::size_t j = 1; j <= m; ++j) {
        cur = std::min(cur, sb[j]);
        run_min[j] = cur;
    }
    for (int i = 1; i <= tail.dim + 1; ++i) {
        const std::size_t jmax = first_occ[i];  // prefix may extend to length jmax
        if (jmax == 0) continue;                // tail starts with i: no truncated jump
        const std::size_t inner = run_min[std::min(jmax, m)];
        std::size_t best = (jmax >= m) ? 0 : kInf;  // whole tail as the final prefix
        if (inner < best) best = inner;
        if (best < kInf) prof.overshoot[i - 1] = best + 1;
    }
    return prof;
}

std::size_t code_distance(const Code& a, const Code& b) {
    if (a == b) return 0;
    SplitCodes split = common_ancestor(a, b);
    const Code& s = split.a_tail;
    const Code& t = split.b_tail;
    if (s.empty() || t.empty()) {
        // Ancestor pair: land exactly on the ancestor, or overshoot to one of
        // its clique members and step back down.
        ClimbProfile p = climb_profile(s.empty() ? t : s);
        std::size_t best = p.to_ancestor;
        for (std::size_t v : p.overshoot)
            if (v != ClimbProfile::npos) best = std::min(best, v + 1);
        return best;
    }
    ClimbProfile ps = climb_profile(s);
    ClimbProfile pt = climb_profile(t);
    std::size_t best = kInf;
    if (ps.to_ancestor != ClimbProfile::npos && pt.to_ancestor != ClimbProfile::npos)
        best = ps.to_ancestor + pt.to_ancestor;  // both land on w
    for (std::size_t i = 0; i < ps.overshoot.size(); ++i)
        if (ps.overshoot[i] != ClimbProfile::npos && pt.overshoot[i] != ClimbProfile::npos)
            best = std::min(best, ps.overshoot[i] + pt.overshoot[i]);  // meet at T_i(w)
    best = std::min(best, ps.best() + pt.best() + 1);  // adjacent landings
    return best;
}

}  // namespace ran
