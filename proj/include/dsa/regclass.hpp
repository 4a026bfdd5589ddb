// regclass.hpp -- regex -> DFA pipeline and the structural classifiers that
// decide whether a regular language carries a type (*) / (*') / (*'')
// pattern in its minimal deterministic automaton.
//
// Witness searches run breadth-first by word length with symbols expanded in
// alphabet order, so the returned witnesses are the shortest ones and the
// whole search is deterministic.

#pragma once

#include "dsa/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dsa {

using Word = std::string;

// ---------------------------------------------------------------------------
// Regex

struct RegexNode;
using RegexPtr = std::shared_ptr<const RegexNode>;

struct RegexNode {
    enum class Op { Empty, Literal, Concat, Alt, Star };
    Op op = Op::Empty;
    char literal = 0;
    RegexPtr lhs, rhs;
};

struct Regex {
    RegexPtr root;
    std::string alphabet;  // sorted, duplicate-free
};

/// Accepts '|' and ',' as alternation, '(' ')' grouping, '*', implicit
/// concatenation, and empty branches for the empty word. The alphabet is the
/// set of literals unless an explicit one is supplied. Throws Error with the
/// offending position on a syntax error.
Regex parse_regex(const std::string& text);
Regex parse_regex(const std::string& text, std::string alphabet);

// ---------------------------------------------------------------------------
// DFA

struct Dfa {
    std::vector<std::string> names;          // state names, JSON round-trip
    std::string alphabet;                    // ordered symbols
    std::vector<std::vector<int>> delta;     // delta[state][symbol index]
    int initial = 0;
    std::vector<bool> accepting;

    int size() const { return static_cast<int>(delta.size()); }
    int sym_index(char c) const;             // throws Error on unknown symbol
    int step(int q, char c) const { return delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(sym_index(c))]; }
    int run_from(int q, const Word& w) const;
    bool accepts(const Word& w) const;

    /// Total/deterministic sanity check; throws Error when broken.
    void check() const;
};

/// Subset construction; the result is total (a sink is added if needed) but
/// not minimized.
Dfa build_dfa(const Regex& r);

/// Unreachable-state removal + partition refinement, then a canonical BFS
/// renaming. Idempotent; two equivalent inputs minimize to identical tables.
Dfa minimize(const Dfa& d);

/// parse + build + minimize in one go.
Dfa minimal_dfa_from_regex(const std::string& text);
Dfa minimal_dfa_from_regex(const std::string& text, std::string alphabet);

/// True iff every symbol acts as a bijection on the states.
bool is_permutation_dfa(const Dfa& d);

/// Least k >= 1 with q x^k = q x^(2k). Throws Error on an empty x.
int idempotent_power(const Dfa& d, int q, const Word& x);

// ---------------------------------------------------------------------------
// Classification

struct Witness {
    enum class Kind { Star, StarPrime, StarDoublePrime };
    Kind kind = Kind::Star;
    int q = -1;   // unused for StarDoublePrime
    int q1 = -1;
    int q2 = -1;
    Word x, y;
    Word omega, z;  // filled by prepare_probe_words
    bool has_probe_words = false;
};

const char* to_string(Witness::Kind k);

/// q1 -x-> q2, q2 -x-> q2, q2 -y-> q1 over the pair-product automaton.
/// The input is minimized internally; witness states refer to the minimal
/// automaton (as do all classify_* results below).
std::optional<Witness> classify_star_dprime(const Dfa& d);

/// q -x-> q1, q -y-> q2 with q1, q2 fixed by both x and y, searched over the
/// triple-product automaton.
std::optional<Witness> classify_star_prime(const Dfa& d);

/// Disjunction of the two searches; the witness kind records which branch
/// fired.
std::optional<Witness> classify_star(const Dfa& d);

/// Literal check of the five type (*) conditions over all pairs of transition
/// monoid elements. Exists to keep classify_star honest; quadratic in the
/// monoid size, so it refuses automata with more than `state_budget` states.
std::optional<Witness> classify_star_monoid_oracle(const Dfa& d, int state_budget = 5);

/// Replays the witness words on the automaton and re-checks the defining
/// equations of its kind.
bool witness_replays(const Dfa& d, const Witness& w);

/// Fills omega (initial -> q, resp. q1) and z (a word telling q1 and q2
/// apart), the extra words the convergence probe wants. Requires a minimal
/// automaton, where such a z always exists.
Witness prepare_probe_words(const Dfa& d, Witness w);

}  // namespace dsa
