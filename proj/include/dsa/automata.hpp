// automata.hpp -- probabilistic reversible automaton models.
//
// Three models share the same skeleton: PraC reads its acceptance from the
// final state distribution, PraDh extracts accept/reject mass while reading,
// and Pra15 moves a head 0 or 1 cells right per step. Transition matrices use
// the column-as-source convention from dsmat, and every word is implicitly
// bracketed by the end-markers '#' and '$' that the endmarker mode admits.

#pragma once

#include "dsa/dsmat.hpp"
#include "dsa/regclass.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dsa {

inline constexpr char kHash = '#';
inline constexpr char kDollar = '$';

enum class EndmarkerMode { Both, HashOnly, None };

const char* to_string(EndmarkerMode m);

/// Classical-acceptance probabilistic reversible automaton.
struct PraC {
    std::vector<std::string> states;
    std::string alphabet;                 // input letters; never contains # or $
    Eigen::Index initial = 0;
    std::vector<bool> accepting;          // rejecting set is the complement
    EndmarkerMode endmarkers = EndmarkerMode::Both;
    std::map<char, StochMatrix> transitions;

    Eigen::Index order() const { return static_cast<Eigen::Index>(states.size()); }
    bool has_hash() const { return endmarkers != EndmarkerMode::None; }
    bool has_dollar() const { return endmarkers == EndmarkerMode::Both; }

    /// Exactly the symbols the transition map must cover.
    std::string working_symbols() const;

    const StochMatrix& matrix(char symbol) const;  // throws Error on unknown symbol
};

/// Decide-and-halt variant: states partition into accepting / rejecting /
/// non-halting, and halting mass is removed as the word is read.
struct PraDh {
    std::vector<std::string> states;
    std::string alphabet;
    Eigen::Index initial = 0;
    std::vector<bool> accepting;
    std::vector<bool> rejecting;          // non-halting = neither
    EndmarkerMode endmarkers = EndmarkerMode::Both;
    std::map<char, StochMatrix> transitions;

    Eigen::Index order() const { return static_cast<Eigen::Index>(states.size()); }
    bool has_hash() const { return endmarkers != EndmarkerMode::None; }
    bool has_dollar() const { return endmarkers == EndmarkerMode::Both; }
    std::string working_symbols() const;
    const StochMatrix& matrix(char symbol) const;
};

/// 1.5-way automaton: per symbol, one nonnegative grid for "stay" moves and
/// one for "advance" moves. End-markers are always part of the tape.
struct Pra15 {
    enum class Flavor { Weak, Strong };

    struct DirPair {
        RatMatrix stay;     // direction 0
        RatMatrix advance;  // direction 1
    };

    std::vector<std::string> states;
    std::string alphabet;
    Eigen::Index initial = 0;
    std::vector<bool> accepting;
    Flavor flavor = Flavor::Weak;
    std::map<char, DirPair> transitions;  // covers alphabet plus # and $

    Eigen::Index order() const { return static_cast<Eigen::Index>(states.size()); }
    std::string working_symbols() const;
    const DirPair& grids(char symbol) const;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string message;
    char symbol = 0;          // 0 for structural problems
    Eigen::Index index = -1;  // offending row/column/state when known
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks transition coverage, matrix orders, exact double stochasticity of
/// every matrix, and (for DH) the state partition. Never throws: all findings
/// land in the report.
ValidationReport validate(const PraC& a);
ValidationReport validate(const PraDh& a);

/// Outgoing sums for both flavors; incoming sums over (state, direction) for
/// the weak flavor; the per-(q1, s1, s2) incoming-mass condition for the
/// strong flavor.
ValidationReport validate_pra15(const Pra15& a);

// ---------------------------------------------------------------------------
// Acceptance

/// Exact probability mass on the accepting states after # w $ (with whichever
/// end-markers the mode admits), starting from the point distribution at the
/// initial state. Throws Error on a symbol outside the alphabet.
Rational accept_prob_c(const PraC& a, const Word& w);

struct DhOutcome {
    Rational accept, reject, nonhalt;  // sums to exactly 1
};

/// After each matrix application the mass on accepting/rejecting states is
/// accumulated and zeroed; the triple is read after the final symbol.
DhOutcome accept_prob_dh(const PraDh& a, const Word& w);

/// Product of letter matrices of w, applied right-to-left, so that
/// apply(word_matrix(a, w), v) plays w onto v. Empty word gives the identity.
StochMatrix word_matrix(const PraC& a, const Word& w);

// ---------------------------------------------------------------------------
// Recognition intervals

struct RecognitionInterval {
    Rational p1;         // max acceptance over sampled non-members
    Rational p2;         // min acceptance over sampled members
    int max_len = 0;
    bool saw_nonmember = false;
    bool saw_member = false;
};

/// Exhaustive over all words of length <= max_len. Observationally identical
/// prefixes (same state distribution, same membership state) are expanded
/// once, which keeps the sweep polynomial for the structured fixtures while
/// returning exactly the exhaustive answer.
RecognitionInterval recognition_interval(const PraC& a, const Dfa& member, int max_len);

/// Plain enumeration against an opaque predicate (no deduplication).
RecognitionInterval recognition_interval(const PraC& a,
                                         const std::function<bool(const Word&)>& member,
                                         int max_len);
RecognitionInterval recognition_interval(const PraDh& a,
                                         const std::function<bool(const Word&)>& member,
                                         int max_len);

/// Transposes every transition matrix; the transpose of a doubly stochastic
/// matrix is doubly stochastic, so the result is again a valid automaton.
PraC reverse_transitions(const PraC& a);

// ---------------------------------------------------------------------------
// 1.5-way simulation

struct Pra15RunStats {
    long trials = 0;
    long accepted = 0;
    long rejected = 0;
    long timeouts = 0;
    double mean_steps_halting = 0.0;

    long halted() const { return accepted + rejected; }
};

/// Monte Carlo over (position, state) walks on #w$. A run halts when the head
/// moves past '$'; acceptance is read from the state partition at that step.
/// Deterministic for a given seed.
Pra15RunStats simulate_pra15(const Pra15& a, const Word& w, long trials, long max_steps,
                             std::uint64_t seed);

}  // namespace dsa
