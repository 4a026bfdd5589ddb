// constructions.hpp -- automaton-to-automaton constructions: probability
// normalization, majority boosting over tensor powers, boolean closure,
// inverse homomorphisms, word quotient, the a1*...an* family, and the two
// end-marker elimination steps.
//
// Every construction returns an automaton that is again exactly doubly
// stochastic; callers can (and tests do) re-validate the output.

#pragma once

#include "dsa/automata.hpp"

#include <map>
#include <string>
#include <vector>

namespace dsa {

/// Kronecker blowup guard shared by boost and strip_hash.
inline constexpr Eigen::Index kDefaultStateBudget = 4096;

struct HomomorphismSpec {
    std::string source;            // Sigma
    std::string target;            // T
    std::map<char, Word> images;   // h : Sigma -> T*

    /// Every source letter mapped, every image over the target alphabet.
    void check() const;
};

struct BoostPlan {
    int copies = 1;
    Rational threshold;  // delta; majority is "more than copies * delta"
    Rational p1, p2;     // source interval, kept for reporting

    /// delta = (p1 + p2) / 2.
    static BoostPlan from_interval(int copies, Rational p1, Rational p2);
};

/// Interval (p1, p2) -> single probability p = p2/(p1+p2) (when p1+p2 >= 1,
/// rejecting sink) or (1-p1)/(2-p1-p2) (otherwise, accepting sink). Adds one
/// sink state and rescales the '#' column of the initial state; the remaining
/// '#' columns are filled uniformly. Requires p1 < p2 and a '#' end-marker.
PraC normalize_probability(const PraC& a, const Rational& p1, const Rational& p2);

/// Product automaton on Q^copies via Kronecker powers of every transition
/// matrix; a tuple accepts when more than copies * threshold of its
/// coordinates are accepting. Throws Error when |Q|^copies exceeds the budget.
PraC boost(const PraC& a, const BoostPlan& plan, Eigen::Index state_budget = kDefaultStateBudget);

/// Least n with n > 1 / (4 eps eta0^2) for eta0 = (p2 - p1) / 4.
long copies_needed(const Rational& p1, const Rational& p2, const Rational& eps);

enum class BoolOp { Union, Intersection };

/// Disjoint union of the two automata; '#' routes half of the initial mass to
/// each sub-automaton. The same construction serves union and intersection
/// (only the recognition interval differs), and it assumes both inputs
/// recognize their languages with probability > 2/3 -- that assumption is the
/// caller's to meet, it is not checked here.
PraC boolean_combine(const PraC& a, const PraC& b, BoolOp op);

/// Swaps accepting and rejecting states; acceptance of every word becomes
/// 1 - previous.
PraC complement(PraC a);

/// V_sigma = product of the image letters' matrices, applied right-to-left;
/// an empty image yields the identity. Recognizes h^-1(L) with the same
/// interval.
PraC inverse_hom(const PraC& a, const HomomorphismSpec& h);

/// Replaces V_# with W_u * V_# where W_u plays the word u; recognizes u^-1 L.
PraC left_quotient(const PraC& a, const Word& u);

/// The (n+1)-state automaton recognizing a1* a2* ... an* with interval
/// (1 - 1/(floor((n/2)^2) + n + 1), 1). Letters are 'a', 'b', ...; end-markers
/// act as the identity. Supports n <= 26.
PraC ln_family(int n);

/// '$' elimination: m interleaved copies; state (i, k) accepts iff
/// k < m * p(q_i) with p(q_i) the mass state i sends into the accepting set
/// on '$'. Preserves bounded-error recognition when m > 1/(p2 - p1) (the
/// caller supplies m). Output has a '#' end-marker only.
PraC strip_dollar(const PraC& a, int m);

struct DirichletCopies {
    long n = 0;
    std::vector<long> g;
};

/// Smallest n >= 1 such that every probs[i] * n is within phi of a positive
/// integer g[i]. Requires 0 < phi < min(1/m, 1); then sum(g) == n. Finite for
/// rational inputs (the common denominator always qualifies).
DirichletCopies dirichlet_copies(const std::vector<Rational>& probs, const Rational& phi);

/// '#' elimination: reads the branch decomposition off the '#' column of the
/// initial state, allocates copies per branch by Dirichlet approximation
/// (n_copies must be a multiple of the returned n), and forms the tensor
/// system with majority threshold delta = (a1 + a2)/2. Each branch automaton
/// is the input restricted to the states reachable from the branch target,
/// which leaves acceptance untouched. Requires 0 < eps < (a2-a1)/(a2+a1).
PraC strip_hash(const PraC& a, const Rational& a1, const Rational& a2, const Rational& eps,
                long n_copies, Eigen::Index state_budget = kDefaultStateBudget);

}  // namespace dsa
