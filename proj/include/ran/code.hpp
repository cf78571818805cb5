#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ran {

using Symbol = std::uint8_t;

// A vertex/clique code: a word over the alphabet {1, ..., dim+1}. The empty
// code denotes the root vertex O; corner vertices carry no code.
struct Code {
    std::vector<Symbol> symbols;
    int dim = 2;

    Code() = default;
    Code(std::vector<Symbol> s, int d) : symbols(std::move(s)), dim(d) {}

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }

    bool operator==(const Code& o) const { return dim == o.dim && symbols == o.symbols; }

    Code appended(Symbol s) const {
        Code c(*this);
        c.symbols.push_back(s);
        return c;
    }
    Code prefix(std::size_t len) const {
        return Code(std::vector<Symbol>(symbols.begin(), symbols.begin() + len), dim);
    }
    Code suffix_from(std::size_t pos) const {  // 0-based start index
        return Code(std::vector<Symbol>(symbols.begin() + pos, symbols.end()), dim);
    }
};

// ASCII form: digit string for dim+1 <= 9 ("3312"), comma-separated otherwise.
// The empty string is the root.
std::string to_string(const Code& code);
Code parse_code(const std::string& text, int dim);

// 1-based position of the last occurrence of symbol i, or nullopt if absent.
// Throws std::invalid_argument when i is outside the alphabet.
std::optional<std::size_t> last_occurrence(const Code& code, Symbol i);

// Cut operator T_i: prefix strictly before the last occurrence of i.
// Absent symbol -> nullopt; the caller decides corner-vertex semantics.
std::optional<Code> cut_t(const Code& code, Symbol i);

// Postfix operator P_i: suffix starting at the last occurrence of i.
std::optional<Code> postfix_p(const Code& code, Symbol i);

// Length of the longest single hop upward: max over present symbols of
// |P_i u|, truncated to |u| whenever some alphabet symbol is missing from
// the code (the jump then overshoots the code's start). Throws on empty.
std::size_t max_hop(const Code& code);

// Number of T_min applications until the code is empty; 0 for the root.
std::size_t block_count(const Code& code);

struct BlockDecomposition {
    std::vector<Code> blocks;  // left to right
    std::size_t count = 0;
};
BlockDecomposition greedy_blocks(const Code& code);

// Exact minimum number of blocks by dynamic programming, O(len^2).
// Every block's leading symbol must occur exactly once within the block;
// with leftmost_unrestricted the leftmost block may instead be any block
// missing at least one alphabet symbol (a truncated jump past the start).
std::size_t min_blocks_oracle(const Code& code, bool leftmost_unrestricted);

struct SplitCodes {
    Code prefix;  // longest common prefix
    Code a_tail;
    Code b_tail;
};
SplitCodes common_ancestor(const Code& a, const Code& b);

// Climb costs for a tail s hanging below an ancestor vertex w:
//   to_ancestor   minimal hops landing exactly on w (strict blocks only),
//   overshoot[i-1] minimal hops whose final jump uses symbol i absent from
//                  the consumed prefix and lands on T_i(w); npos if no such
//                  climb exists.
struct ClimbProfile {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t to_ancestor = npos;
    std::vector<std::size_t> overshoot;

    std::size_t best() const;  // == block_count of the tail
};
ClimbProfile climb_profile(const Code& tail);

// Exact graph distance between the vertices with codes a and b, derived from
// the codes alone. The climbs from both sides must meet on a common vertex:
// either the deepest common ancestor w, or T_i(w) reached by truncated jumps
// with the same symbol i from both sides, or two distinct members of the
// clique that w filled, which are adjacent (one bridging hop).
std::size_t code_distance(const Code& a, const Code& b);

}  // namespace ran
