#include "dsa/markov.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dsa {

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix pattern_of(const StochMatrix& a) {
    const Eigen::Index n = a.order();
    BoolMatrix p(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = !a(i, j).is_zero();
    return p;
}

// Boolean product: (a . b)(i, j) = OR_k a(i, k) & b(k, j).
BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    const std::size_t n = a.size();
    BoolMatrix out(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (b[k][j]) out[i][j] = true;
    return out;
}

// Tarjan-style SCC computation via two DFS passes (Kosaraju). Edge j -> i
// whenever entry (i, j) is nonzero (column = source).
std::vector<int> scc_of(const BoolMatrix& p) {
    const int n = static_cast<int>(p.size());
    std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n)), rev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                fwd[static_cast<std::size_t>(j)].push_back(i);
                rev[static_cast<std::size_t>(i)].push_back(j);
            }

    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        // Iterative post-order DFS.
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < fwd[static_cast<std::size_t>(u)].size()) {
                const int v = fwd[static_cast<std::size_t>(u)][next++];
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }

    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int ncomp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<std::size_t>(*it)] >= 0) continue;
        std::deque<int> work{*it};
        comp[static_cast<std::size_t>(*it)] = ncomp;
        while (!work.empty()) {
            const int u = work.front();
            work.pop_front();
            for (int v : rev[static_cast<std::size_t>(u)])
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    work.push_back(v);
                }
        }
        ++ncomp;
    }
    return comp;
}

}  // namespace

ChainReport analyze_chain(const StochMatrix& a) {
    if (!a.is_column_stochastic())
        throw Error("analyze_chain: input is not column-stochastic");
    const int n = static_cast<int>(a.order());
    const BoolMatrix p = pattern_of(a);
    const std::vector<int> comp = scc_of(p);
    const int ncomp = 1 + *std::max_element(comp.begin(), comp.end());

    ChainReport report;
    report.classes.assign(static_cast<std::size_t>(ncomp), {});
    for (int q = 0; q < n; ++q) report.classes[static_cast<std::size_t>(comp[static_cast<std::size_t>(q)])].push_back(q);
    for (auto& cls : report.classes) std::sort(cls.begin(), cls.end());

    // A class is transient when some edge leaves it.
    std::vector<bool> leaks(static_cast<std::size_t>(ncomp), false);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                comp[static_cast<std::size_t>(i)] != comp[static_cast<std::size_t>(j)])
                leaks[static_cast<std::size_t>(comp[static_cast<std::size_t>(j)])] = true;
    for (int q = 0; q < n; ++q)
        if (leaks[static_cast<std::size_t>(comp[static_cast<std::size_t>(q)])]) report.transient.push_back(q);

    // Period per class: gcd of (depth(u) + 1 - depth(v)) over intra-class
    // edges u -> v, depths from a BFS inside the class. 0 = no cycle at all.
    report.period.assign(static_cast<std::size_t>(n), 0);
    for (const auto& cls : report.classes) {
        std::vector<long> depth(static_cast<std::size_t>(n), -1);
        const int root = cls.front();
        depth[static_cast<std::size_t>(root)] = 0;
        std::deque<int> work{root};
        while (!work.empty()) {
            const int u = work.front();
            work.pop_front();
            for (int v = 0; v < n; ++v)
                if (p[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] &&
                    comp[static_cast<std::size_t>(v)] == comp[static_cast<std::size_t>(u)] &&
                    depth[static_cast<std::size_t>(v)] < 0) {
                    depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
                    work.push_back(v);
                }
        }
        long g = 0;
        for (int u : cls)
            for (int v = 0; v < n; ++v)
                if (p[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] &&
                    comp[static_cast<std::size_t>(v)] == comp[static_cast<std::size_t>(u)])
                    g = std::gcd(g, std::abs(depth[static_cast<std::size_t>(u)] + 1 - depth[static_cast<std::size_t>(v)]));
        for (int q : cls) report.period[static_cast<std::size_t>(q)] = g;
    }

    report.irreducible = report.transient.empty() && ncomp == 1;
    report.aperiodic = report.transient.empty() &&
                       std::all_of(report.period.begin(), report.period.end(),
                                   [](long d) { return d == 1; });
    return report;
}

long positive_diagonal_power(const StochMatrix& a, long cap) {
    if (!a.is_doubly_stochastic())
        throw Error("positive_diagonal_power: input is not doubly stochastic");
    if (cap < 1) throw Error("positive_diagonal_power: cap must be >= 1");
    const std::size_t n = static_cast<std::size_t>(a.order());
    const BoolMatrix base = pattern_of(a);
    BoolMatrix power = base;
    for (long k = 1; k <= cap; ++k) {
        bool all = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!power[i][i]) {
                all = false;
                break;
            }
        if (all) return k;
        power = bool_product(power, base);
    }
    throw Error("positive_diagonal_power: cap " + std::to_string(cap) +
                " exceeded; raise the cap (existence is guaranteed)");
}

StationaryOutcome stationary_limit(const StochMatrix& a, double tol, long max_iter) {
    if (!a.is_doubly_stochastic())
        throw Error("stationary_limit: input is not doubly stochastic");

    const ChainReport chain = analyze_chain(a);
    StationaryOutcome out;
    if (!chain.irreducible) {
        out.status = StationaryOutcome::Status::Refused;
        out.refusal = "not irreducible";
        return out;
    }
    if (!chain.aperiodic) {
        out.status = StationaryOutcome::Status::Refused;
        out.refusal = "periodic";
        return out;
    }

    const Eigen::Index n = a.order();
    Eigen::MatrixXd p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p(i, j) = a(i, j).to_double();

    // Deterministically perturbed uniform start.
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = 1.0 + static_cast<double>(i + 1) / (10.0 * static_cast<double>(n));
    v /= v.sum();

    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (long it = 1; it <= max_iter; ++it) {
        const Eigen::VectorXd next = p * v;
        const double step = (next - v).lpNorm<Eigen::Infinity>();
        v = next;
        if (step < tol && (v - uniform).lpNorm<Eigen::Infinity>() < tol) {
            out.status = StationaryOutcome::Status::Converged;
            out.stationary = v;
            out.iterations = it;
            return out;
        }
    }
    out.status = StationaryOutcome::Status::MaxIterExceeded;
    out.refusal = "no convergence within " + std::to_string(max_iter) + " iterations";
    out.iterations = max_iter;
    return out;
}

bool no_transient_check(const StochMatrix& a) {
    if (!a.is_doubly_stochastic())
        throw Error("no_transient_check: input is not doubly stochastic");
    return analyze_chain(a).transient.empty();
}

ProbeResult convergence_probe(const PraC& a, const ProbeWords& words, int m_max, long k_cap) {
    if (m_max < 1) throw Error("convergence_probe: m_max must be >= 1");
    const ValidationReport vr = validate(a);
    if (!vr.ok()) throw Error("convergence_probe: automaton is invalid: " + vr.violations.front().message);

    const StochMatrix x_mat = word_matrix(a, words.x);
    const StochMatrix y_mat = word_matrix(a, words.y);
    const StochMatrix w_mat = word_matrix(a, words.omega);
    const StochMatrix z_mat = word_matrix(a, words.z);

    // Smallest K with positive diagonals in both X^K and Y^K, on patterns.
    long k_power = 0;
    {
        const BoolMatrix bx = pattern_of(x_mat);
        const BoolMatrix by = pattern_of(y_mat);
        BoolMatrix px = bx, py = by;
        const std::size_t n = bx.size();
        for (long k = 1; k <= k_cap; ++k) {
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i) all = px[i][i] && py[i][i];
            if (all) {
                k_power = k;
                break;
            }
            px = bool_product(px, bx);
            py = bool_product(py, by);
        }
        if (k_power == 0) throw Error("convergence_probe: diagonal power cap exceeded");
    }

    StochMatrix xk = StochMatrix::identity(a.order());
    StochMatrix yk = StochMatrix::identity(a.order());
    for (long i = 0; i < k_power; ++i) {
        xk = matmul(xk, x_mat);
        yk = matmul(yk, y_mat);
    }
    const StochMatrix block = matmul(yk, xk);  // plays x^K then y^K

    RatVector start = RatVector::Zero(a.order());
    start(a.initial) = Rational(1);
    if (a.has_hash()) start = (a.matrix(kHash).entries() * start).eval();
    const RatVector after_omega = w_mat.entries() * start;

    const auto acceptance = [&](RatVector dist) {
        dist = (z_mat.entries() * dist).eval();
        if (a.has_dollar()) dist = (a.matrix(kDollar).entries() * dist).eval();
        Rational sum;
        for (Eigen::Index i = 0; i < dist.size(); ++i)
            if (a.accepting[static_cast<std::size_t>(i)]) sum += dist(i);
        return sum;
    };

    ProbeResult result;
    result.k_power = k_power;
    RatVector path1 = after_omega;                                   // omega (x^K y^K)^m
    RatVector path2 = (yk.entries() * after_omega).eval();           // omega y^K (x^K y^K)^m
    for (int m = 1; m <= m_max; ++m) {
        path1 = (block.entries() * path1).eval();
        path2 = (block.entries() * path2).eval();
        result.m.push_back(m);
        result.gaps.push_back(abs(acceptance(path1) - acceptance(path2)));
    }
    return result;
}

}  // namespace dsa
