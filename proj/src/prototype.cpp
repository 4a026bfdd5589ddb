#include "dsa/prototype.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace dsa {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

double entrywise_unitarity_error(const ComplexMatrix& u) {
    const Eigen::Index n = u.rows();
    const ComplexMatrix gram = u * u.adjoint();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex expect = (i == j) ? Complex(1, 0) : Complex(0, 0);
            worst = std::max(worst, std::abs(gram(i, j) - expect));
        }
    return worst;
}

}  // namespace

bool is_prototype(const ComplexMatrix& u, const StochMatrix& s, double tol) {
    if (u.rows() != u.cols()) throw Error("is_prototype: matrix is not square");
    if (u.rows() != s.order()) throw Error("is_prototype: order mismatch");
    if (!u.allFinite()) return false;
    if (entrywise_unitarity_error(u) > tol) return false;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j)
            if (std::abs(std::norm(u(i, j)) - s(i, j).to_double()) > tol) return false;
    return true;
}

UnistochasticVerdict unistochastic_3x3(const StochMatrix& s) {
    if (s.order() != 3) throw Error("unistochastic_3x3: order must be 3");
    if (!s.is_doubly_stochastic()) throw Error("unistochastic_3x3: input is not doubly stochastic");

    // Squared chain links p, q, r (the triangle sides are their roots).
    const Rational p = s(0, 0) * s(1, 0);
    const Rational q = s(0, 1) * s(1, 1);
    const Rational r = s(0, 2) * s(1, 2);

    // |sqrt(p) - sqrt(q)| <= sqrt(r) <= sqrt(p) + sqrt(q), decided exactly:
    // sqrt(r) <= sqrt(p) + sqrt(q)  <=>  r - p - q <= 0 or (r-p-q)^2 <= 4pq.
    const auto root_leq_sum = [](const Rational& rr, const Rational& pp, const Rational& qq) {
        const Rational d = rr - pp - qq;
        if (d <= Rational(0)) return true;
        return d * d <= Rational(4) * pp * qq;
    };
    const bool closes = root_leq_sum(r, p, q) && root_leq_sum(p, q, r) && root_leq_sum(q, r, p);

    UnistochasticVerdict verdict;
    if (!closes) return verdict;

    const double a = std::sqrt(p.to_double());
    const double b = std::sqrt(q.to_double());
    const double c = std::sqrt(r.to_double());

    // Phases of row 1 so that a + b e^(i beta) + c e^(i gamma) = 0.
    double beta = 0.0, gamma = 0.0;
    if (a > 0 && b > 0) {
        const double cosb = std::clamp((c * c - a * a - b * b) / (2 * a * b), -1.0, 1.0);
        beta = std::acos(cosb);
        const Complex rest = -(Complex(a, 0) + b * std::polar(1.0, beta));
        gamma = (c > 0) ? std::arg(rest) : 0.0;
    } else if (a > 0) {          // b = 0: need c = a, opposite phases
        gamma = kPi;
    } else if (b > 0) {          // a = 0: need c = b
        beta = 0.0;
        gamma = kPi;
    }                            // a = b = 0: c = 0 too; any phases do

    ComplexMatrix u(3, 3);
    for (Eigen::Index j = 0; j < 3; ++j) u(0, j) = std::sqrt(s(0, j).to_double());
    u(1, 0) = std::sqrt(s(1, 0).to_double());
    u(1, 1) = std::sqrt(s(1, 1).to_double()) * std::polar(1.0, beta);
    u(1, 2) = std::sqrt(s(1, 2).to_double()) * std::polar(1.0, gamma);

    // Third row: conjugate cross product of the first two. For orthonormal
    // rows this is the unique completion up to a global phase. Eigen's cross
    // already conjugates complex results.
    const Eigen::Vector3cd r0 = u.row(0);
    const Eigen::Vector3cd r1 = u.row(1);
    u.row(2) = r0.cross(r1);

    if (!is_prototype(u, s, 1e-9))
        throw Error("unistochastic_3x3: internal: certificate failed verification");
    verdict.yes = true;
    verdict.prototype = std::move(u);
    return verdict;
}

namespace {

// Unitarity residual of the phase parametrization: half the squared Frobenius
// norm of the off-diagonal Gram entries. Row norms equal 1 automatically.
struct PhaseProblem {
    Eigen::MatrixXd moduli;  // sqrt(S_ij)

    Eigen::Index n() const { return moduli.rows(); }

    ComplexMatrix assemble(const Eigen::MatrixXd& theta) const {
        ComplexMatrix u(n(), n());
        for (Eigen::Index i = 0; i < n(); ++i)
            for (Eigen::Index j = 0; j < n(); ++j)
                u(i, j) = moduli(i, j) * std::polar(1.0, theta(i, j));
        return u;
    }

    double residual(const ComplexMatrix& u) const {
        const ComplexMatrix gram = u * u.adjoint();
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n(); ++i)
            for (Eigen::Index j = 0; j < n(); ++j)
                if (i != j) sum += std::norm(gram(i, j));
        return 0.5 * sum;
    }

    // dR/dtheta(p, k) = sum_{j != p} 2 Re(conj(G_pj) * i * u(p,k) conj(u(j,k))).
    Eigen::MatrixXd gradient(const ComplexMatrix& u) const {
        const ComplexMatrix gram = u * u.adjoint();
        Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n(), n());
        for (Eigen::Index p = 0; p < n(); ++p)
            for (Eigen::Index k = 0; k < n(); ++k) {
                double g = 0.0;
                for (Eigen::Index j = 0; j < n(); ++j) {
                    if (j == p) continue;
                    const Complex t = u(p, k) * std::conj(u(j, k));
                    g += 2.0 * std::real(std::conj(gram(p, j)) * Complex(0, 1) * t);
                }
                grad(p, k) = g;
            }
        return grad;
    }
};

// Gradient descent with backtracking; succeeds when the residual reaches
// target, gives up on stagnation.
bool descend(const PhaseProblem& prob, Eigen::MatrixXd& theta, double target, int max_iters) {
    double step = 0.5;
    ComplexMatrix u = prob.assemble(theta);
    double value = prob.residual(u);
    for (int it = 0; it < max_iters; ++it) {
        if (value <= target) return true;
        const Eigen::MatrixXd grad = prob.gradient(u);
        const double gnorm = grad.norm();
        if (gnorm < 1e-14) return value <= target;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt) {
            const Eigen::MatrixXd trial = theta - step * grad;
            const ComplexMatrix tu = prob.assemble(trial);
            const double tv = prob.residual(tu);
            if (tv < value) {
                theta = trial;
                u = tu;
                value = tv;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) return value <= target;
    }
    return value <= target;
}

}  // namespace

std::optional<ComplexMatrix> search_prototype(const StochMatrix& s, long budget,
                                              std::uint64_t seed, double tol) {
    if (!s.is_doubly_stochastic()) throw Error("search_prototype: input is not doubly stochastic");
    if (budget < 1) throw Error("search_prototype: budget must be >= 1");

    const Eigen::Index n = s.order();
    PhaseProblem prob;
    prob.moduli.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) prob.moduli(i, j) = std::sqrt(s(i, j).to_double());

    std::mt19937_64 rng(seed);
    const auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double target = 0.25 * tol * tol;

    for (long attempt = 0; attempt < budget; ++attempt) {
        Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
        if (attempt == 1 && n == 2) {
            theta(1, 1) = kPi;  // closed form for any 2x2 bistochastic matrix
        } else if (attempt >= 1) {
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) theta(i, j) = 2.0 * kPi * uniform01();
        }
        if (!descend(prob, theta, target, 400)) continue;
        ComplexMatrix u = prob.assemble(theta);
        if (is_prototype(u, s, tol)) return u;
    }
    return std::nullopt;
}

}  // namespace dsa
