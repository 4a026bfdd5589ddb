// markov.hpp -- structure analysis of stochastic matrices viewed as finite
// Markov chains, plus the convergence probe that makes the block-mixing
// argument behind the type (*') non-recognizability proof observable.

#pragma once

#include "dsa/automata.hpp"
#include "dsa/dsmat.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dsa {

struct ChainReport {
    std::vector<std::vector<int>> classes;  // communication classes (SCCs), each sorted
    std::vector<int> transient;             // states whose class leaks outward
    std::vector<long> period;               // per state; 0 when the state lies on no cycle
    bool irreducible = false;
    bool aperiodic = false;
};

/// Accessibility by graph reachability on the nonzero pattern; communication
/// classes as strongly connected components; periods by gcd of cycle lengths
/// within each class (via BFS depth differences, no matrix powers). Requires
/// at least a column-stochastic input.
ChainReport analyze_chain(const StochMatrix& a);

/// Least K <= cap with every diagonal entry of A^K positive, computed on the
/// boolean nonzero pattern (exact for nonnegative matrices). Such a K always
/// exists for doubly stochastic A; exceeding the cap therefore signals a cap
/// that is too small, and throws.
long positive_diagonal_power(const StochMatrix& a, long cap = 1L << 20);

struct StationaryOutcome {
    enum class Status { Converged, Refused, MaxIterExceeded };
    Status status = Status::Refused;
    std::string refusal;           // violated hypothesis when refused
    Eigen::VectorXd stationary;    // when converged
    long iterations = 0;
};

/// Floating-point power iteration from a deterministically perturbed uniform
/// start. Converges when successive iterates differ by < tol in max norm and
/// the iterate sits within tol of the all-1/m vector; refuses (naming the
/// violated hypothesis) when the chain is not irreducible or not aperiodic.
StationaryOutcome stationary_limit(const StochMatrix& a, double tol = 1e-9, long max_iter = 10000);

/// True iff analyze_chain reports no transient states. Doubly stochastic
/// chains never have any; the operation exists so that fact can be property
/// tested. Throws on inputs that are not doubly stochastic.
bool no_transient_check(const StochMatrix& a);

struct ProbeWords {
    Word omega, x, y, z;
};

struct ProbeResult {
    std::vector<int> m;
    std::vector<Rational> gaps;  // |p_xi1 - p_xi2| per m
    long k_power = 0;            // K with diag(X^K) > 0 and diag(Y^K) > 0
};

/// Evaluates |accept(omega (x^K y^K)^m z) - accept(omega y^K (x^K y^K)^m z)|
/// exactly for m = 1..m_max. For any valid PRA-C the gap sequence tends to 0,
/// which is exactly what rules out bounded-error recognition of type (*')
/// languages; the probe reports the decay and asserts nothing.
ProbeResult convergence_probe(const PraC& a, const ProbeWords& words, int m_max = 16,
                              long k_cap = 1L << 20);

}  // namespace dsa
