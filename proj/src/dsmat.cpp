#include "dsa/dsmat.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace dsa {

namespace {

const Rational kZero(0);
const Rational kOne(1);

bool in_unit_interval(const Rational& r) { return r >= kZero && r <= kOne; }

// Uniform integer in [0, bound) drawn by rejection, so the sequence depends
// only on the engine and not on the standard library's distribution choices.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

const char* to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::General: return "general";
        case MatrixKind::ColumnStochastic: return "column-stochastic";
        case MatrixKind::DoublyStochastic: return "doubly-stochastic";
        case MatrixKind::Permutation: return "permutation";
    }
    return "?";
}

ClassifyVerdict classify_matrix(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw Error("classify_matrix: matrix is not square");
    const Eigen::Index n = m.rows();

    ClassifyVerdict v;
    for (Eigen::Index j = 0; j < n; ++j) {
        Rational sum;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!in_unit_interval(m(i, j))) {
                v.kind = MatrixKind::General;
                v.bad_column = j;
                v.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") = " + m(i, j).str() + " outside [0,1]";
                return v;
            }
            sum += m(i, j);
        }
        if (sum != kOne) {
            v.kind = MatrixKind::General;
            v.bad_column = j;
            v.detail = "column " + std::to_string(j) + " sums to " + sum.str();
            return v;
        }
    }
    v.kind = MatrixKind::ColumnStochastic;

    for (Eigen::Index i = 0; i < n; ++i) {
        Rational sum;
        for (Eigen::Index j = 0; j < n; ++j) sum += m(i, j);
        if (sum != kOne) {
            v.bad_row = i;
            v.detail = "row " + std::to_string(i) + " sums to " + sum.str();
            return v;
        }
    }
    v.kind = MatrixKind::DoublyStochastic;

    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!m(i, j).is_zero() && m(i, j) != kOne) return v;
    v.kind = MatrixKind::Permutation;
    return v;
}

StochMatrix::StochMatrix(RatMatrix entries) : entries_(std::move(entries)) {
    kind_ = classify_matrix(entries_).kind;
}

StochMatrix StochMatrix::identity(Eigen::Index n) {
    RatMatrix m = RatMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = kOne;
    return StochMatrix(std::move(m));
}

Distribution::Distribution(RatVector weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0) throw Error("distribution: empty vector");
    Rational sum;
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
        if (!in_unit_interval(weights_(i)))
            throw Error("distribution: weight " + weights_(i).str() + " outside [0,1]");
        sum += weights_(i);
    }
    if (sum != kOne) throw Error("distribution: weights sum to " + sum.str() + ", expected 1");
}

Distribution Distribution::point(Eigen::Index n, Eigen::Index at) {
    if (at < 0 || at >= n) throw Error("distribution: point index out of range");
    RatVector w = RatVector::Zero(n);
    w(at) = kOne;
    return Distribution(std::move(w));
}

Distribution Distribution::uniform(Eigen::Index n) {
    RatVector w(n);
    const Rational share(1, static_cast<long>(n));
    for (Eigen::Index i = 0; i < n; ++i) w(i) = share;
    return Distribution(std::move(w));
}

Rational Distribution::max() const {
    Rational best = weights_(0);
    for (Eigen::Index i = 1; i < weights_.size(); ++i)
        if (weights_(i) > best) best = weights_(i);
    return best;
}

Rational Distribution::min() const {
    Rational best = weights_(0);
    for (Eigen::Index i = 1; i < weights_.size(); ++i)
        if (weights_(i) < best) best = weights_(i);
    return best;
}

StochMatrix matmul(const StochMatrix& a, const StochMatrix& b) {
    if (a.order() != b.order())
        throw Error("matmul: order mismatch (" + std::to_string(a.order()) + " vs " +
                    std::to_string(b.order()) + ")");
    RatMatrix prod = a.entries() * b.entries();
    return StochMatrix(std::move(prod));
}

StochMatrix kron(const StochMatrix& a, const StochMatrix& b) {
    const Eigen::Index na = a.order(), nb = b.order();
    RatMatrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i)
        for (Eigen::Index j = 0; j < na; ++j)
            for (Eigen::Index k = 0; k < nb; ++k)
                for (Eigen::Index l = 0; l < nb; ++l)
                    out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return StochMatrix(std::move(out));
}

Distribution apply(const StochMatrix& m, const Distribution& v) {
    if (m.order() != v.size())
        throw Error("apply: matrix order " + std::to_string(m.order()) +
                    " does not match vector length " + std::to_string(v.size()));
    RatVector out = m.entries() * v.weights();
    return Distribution(std::move(out));
}

StochMatrix transpose(const StochMatrix& m) {
    RatMatrix t = m.entries().transpose();
    return StochMatrix(std::move(t));
}

StochMatrix random_doubly_stochastic(Eigen::Index n, int k, std::uint64_t seed) {
    if (n < 1) throw Error("random_doubly_stochastic: order must be positive");
    if (k < 1) throw Error("random_doubly_stochastic: need at least one permutation term");

    std::mt19937_64 rng(seed);
    RatMatrix acc = RatMatrix::Zero(n, n);

    // Integer weights, normalized at the end: the combination stays exact.
    std::vector<long> weights(static_cast<std::size_t>(k));
    long total = 0;
    for (auto& w : weights) {
        w = static_cast<long>(uniform_below(rng, 1000)) + 1;
        total += w;
    }

    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (int t = 0; t < k; ++t) {
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        for (Eigen::Index i = n - 1; i > 0; --i) {
            const auto j = static_cast<Eigen::Index>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        const Rational w(weights[static_cast<std::size_t>(t)], total);
        for (Eigen::Index j = 0; j < n; ++j) acc(perm[static_cast<std::size_t>(j)], j) += w;
    }
    return StochMatrix(std::move(acc));
}

}  // namespace dsa
