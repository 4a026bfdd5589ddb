// dsmat.hpp -- exact stochastic matrices and probability vectors.
//
// Matrices follow the column-as-source convention: entry (i, j) is the
// probability of moving from state j to state i, so a distribution evolves as
// v' = M * v. Every classification and invariant here is checked in exact
// rational arithmetic; there is no tolerance anywhere in this module.

#pragma once

#include "dsa/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dsa {

/// Ordered from weakest to strongest; each kind implies the previous ones
/// (a permutation matrix is in particular doubly stochastic).
enum class MatrixKind {
    General,
    ColumnStochastic,
    DoublyStochastic,
    Permutation,
};

const char* to_string(MatrixKind k);

/// Result of exact classification. On failure to reach a kind, the first
/// offending column/row index is reported (entry range problems count against
/// the column they appear in).
struct ClassifyVerdict {
    MatrixKind kind = MatrixKind::General;
    Eigen::Index bad_column = -1;
    Eigen::Index bad_row = -1;
    std::string detail;
};

/// Exact column/row summation; throws Error on a non-square input.
ClassifyVerdict classify_matrix(const RatMatrix& m);

/// A square rational matrix together with its classification. The entries are
/// immutable after construction, so the stored kind can never go stale.
class StochMatrix {
public:
    explicit StochMatrix(RatMatrix entries);

    static StochMatrix identity(Eigen::Index n);

    Eigen::Index order() const { return entries_.rows(); }
    MatrixKind kind() const { return kind_; }
    const RatMatrix& entries() const { return entries_; }
    const Rational& operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    bool is_column_stochastic() const { return kind_ >= MatrixKind::ColumnStochastic; }
    bool is_doubly_stochastic() const { return kind_ >= MatrixKind::DoublyStochastic; }
    bool is_permutation() const { return kind_ == MatrixKind::Permutation; }

    friend bool operator==(const StochMatrix& a, const StochMatrix& b) {
        return a.entries_ == b.entries_;
    }

private:
    RatMatrix entries_;
    MatrixKind kind_;
};

/// Probability vector: entries in [0,1] summing to exactly 1.
class Distribution {
public:
    explicit Distribution(RatVector weights);

    /// Point mass at index `at` in a vector of length n.
    static Distribution point(Eigen::Index n, Eigen::Index at);
    static Distribution uniform(Eigen::Index n);

    Eigen::Index size() const { return weights_.size(); }
    const RatVector& weights() const { return weights_; }
    const Rational& operator[](Eigen::Index i) const { return weights_(i); }

    Rational max() const;
    Rational min() const;

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.weights_ == b.weights_;
    }

private:
    RatVector weights_;
};

/// Exact product; throws Error on an order mismatch.
StochMatrix matmul(const StochMatrix& a, const StochMatrix& b);

/// Kronecker product of order n_a * n_b; block (i, j) is a(i, j) * b.
StochMatrix kron(const StochMatrix& a, const StochMatrix& b);

/// Exact M * v; throws Error on a size mismatch.
Distribution apply(const StochMatrix& m, const Distribution& v);

StochMatrix transpose(const StochMatrix& m);

/// Convex combination of k uniformly drawn permutation matrices with rational
/// weights summing to 1 (Birkhoff-style), so the result is doubly stochastic
/// by construction and exactly so. Deterministic for a given seed.
StochMatrix random_doubly_stochastic(Eigen::Index n, int k, std::uint64_t seed);

}  // namespace dsa
