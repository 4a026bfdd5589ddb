#include "dsa/constructions.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace dsa {

namespace {

const Rational kZero(0);
const Rational kOne(1);
const Rational kHalf(1, 2);

mpz_class floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return q;
}

long to_long_checked(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw Error(std::string(what) + ": value does not fit a machine integer");
    return z.get_si();
}

void require_valid(const PraC& a, const char* op) {
    const ValidationReport r = validate(a);
    if (!r.ok()) throw Error(std::string(op) + ": input automaton is invalid: " + r.violations.front().message);
}

// Mixed-radix decode of `code` into width digits, most significant first,
// all with the same radix.
std::vector<Eigen::Index> decode_uniform(Eigen::Index code, Eigen::Index radix, int width) {
    std::vector<Eigen::Index> digits(static_cast<std::size_t>(width));
    for (int i = width - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = code % radix;
        code /= radix;
    }
    return digits;
}

std::string joined_name(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back('.');
        out += parts[i];
    }
    return out;
}

}  // namespace

void HomomorphismSpec::check() const {
    const std::set<char> src(source.begin(), source.end());
    const std::set<char> tgt(target.begin(), target.end());
    if (src.size() != source.size()) throw Error("homomorphism: duplicate source symbols");
    if (tgt.size() != target.size()) throw Error("homomorphism: duplicate target symbols");
    for (char c : source)
        if (!images.count(c)) throw Error(std::string("homomorphism: no image for '") + c + "'");
    for (const auto& [c, image] : images) {
        if (!src.count(c)) throw Error(std::string("homomorphism: image for '") + c + "' outside the source alphabet");
        for (char t : image)
            if (!tgt.count(t))
                throw Error(std::string("homomorphism: image of '") + c + "' uses '" + t +
                            "' outside the target alphabet");
    }
}

BoostPlan BoostPlan::from_interval(int copies, Rational p1, Rational p2) {
    BoostPlan plan;
    plan.copies = copies;
    plan.threshold = (p1 + p2) * kHalf;
    plan.p1 = std::move(p1);
    plan.p2 = std::move(p2);
    return plan;
}

PraC normalize_probability(const PraC& a, const Rational& p1, const Rational& p2) {
    if (p1 >= p2) throw Error("normalize_probability: need p1 < p2");
    if (!a.has_hash()) throw Error("normalize_probability: automaton has no '#' end-marker");
    require_valid(a, "normalize_probability");

    const Eigen::Index n_old = a.order();
    const Eigen::Index n = n_old + 1;
    const Eigen::Index sink = n_old;
    const bool reject_branch = (p1 + p2) >= kOne;
    const Rational scale = reject_branch ? kOne / (p1 + p2) : kOne / (Rational(2) - p1 - p2);
    const Rational leak = kOne - scale;

    PraC out;
    out.states = a.states;
    out.states.push_back("sink");
    out.alphabet = a.alphabet;
    out.initial = a.initial;
    out.endmarkers = a.endmarkers;
    out.accepting = a.accepting;
    out.accepting.push_back(!reject_branch);

    // Letters and '$': block diagonal with the sink fixed.
    for (char c : a.working_symbols()) {
        if (c == kHash) continue;
        RatMatrix m = RatMatrix::Zero(n, n);
        m.topLeftCorner(n_old, n_old) = a.matrix(c).entries();
        m(sink, sink) = kOne;
        out.transitions.emplace(c, StochMatrix(std::move(m)));
    }

    // '#': the initial column is the rescaled old column plus the sink leak;
    // every other column carries the uniform fill from the construction.
    {
        const RatMatrix& old_hash = a.matrix(kHash).entries();
        RatMatrix m(n, n);
        RatVector init_col = RatVector::Zero(n);
        for (Eigen::Index i = 0; i < n_old; ++i) init_col(i) = scale * old_hash(i, a.initial);
        init_col(sink) = leak;
        const Rational fill_den(static_cast<long>(n - 1));
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                m(i, j) = (j == a.initial) ? init_col(i) : (kOne - init_col(i)) / fill_den;
        out.transitions.emplace(kHash, StochMatrix(std::move(m)));
    }
    return out;
}

PraC boost(const PraC& a, const BoostPlan& plan, Eigen::Index state_budget) {
    if (plan.copies < 1) throw Error("boost: copies must be >= 1");
    if (!(plan.p1 < plan.threshold && plan.threshold < plan.p2))
        throw Error("boost: threshold must lie strictly inside the source interval");
    require_valid(a, "boost");

    const Eigen::Index base = a.order();
    Eigen::Index total = 1;
    for (int i = 0; i < plan.copies; ++i) {
        if (total > state_budget / base + 1) throw Error("boost: state budget exceeded");
        total *= base;
        if (total > state_budget) throw Error("boost: state budget exceeded");
    }

    PraC out;
    out.alphabet = a.alphabet;
    out.endmarkers = a.endmarkers;

    const Rational bar = Rational(plan.copies) * plan.threshold;
    Eigen::Index initial_code = 0;
    for (int i = 0; i < plan.copies; ++i) initial_code = initial_code * base + a.initial;
    out.initial = initial_code;

    for (Eigen::Index code = 0; code < total; ++code) {
        const auto digits = decode_uniform(code, base, plan.copies);
        long acc = 0;
        std::vector<std::string> parts;
        parts.reserve(digits.size());
        for (const auto d : digits) {
            if (a.accepting[static_cast<std::size_t>(d)]) ++acc;
            parts.push_back(a.states[static_cast<std::size_t>(d)]);
        }
        out.states.push_back(joined_name(parts));
        out.accepting.push_back(Rational(acc) > bar);
    }

    for (char c : a.working_symbols()) {
        StochMatrix power = a.matrix(c);
        for (int i = 1; i < plan.copies; ++i) power = kron(power, a.matrix(c));
        out.transitions.emplace(c, std::move(power));
    }
    return out;
}

long copies_needed(const Rational& p1, const Rational& p2, const Rational& eps) {
    if (!(eps > kZero && eps < kOne)) throw Error("copies_needed: eps must be in (0,1)");
    if (!(p1 < p2)) throw Error("copies_needed: need p1 < p2");
    const Rational eta0 = (p2 - p1) / Rational(4);
    const Rational bound = kOne / (Rational(4) * eps * eta0 * eta0);
    return to_long_checked(floor_of(bound) + 1, "copies_needed");
}

PraC boolean_combine(const PraC& a, const PraC& b, BoolOp) {
    if (a.alphabet != b.alphabet) throw Error("boolean_combine: alphabets differ");
    if (a.endmarkers != b.endmarkers) throw Error("boolean_combine: end-marker modes differ");
    if (!a.has_hash()) throw Error("boolean_combine: automata need a '#' end-marker");
    require_valid(a, "boolean_combine");
    require_valid(b, "boolean_combine");

    const Eigen::Index na = a.order(), nb = b.order(), n = na + nb;

    PraC out;
    out.alphabet = a.alphabet;
    out.endmarkers = a.endmarkers;
    out.initial = a.initial;
    for (const auto& s : a.states) out.states.push_back("a:" + s);
    for (const auto& s : b.states) out.states.push_back("b:" + s);
    out.accepting = a.accepting;
    out.accepting.insert(out.accepting.end(), b.accepting.begin(), b.accepting.end());

    for (char c : a.working_symbols()) {
        if (c == kHash) continue;
        RatMatrix m = RatMatrix::Zero(n, n);
        m.topLeftCorner(na, na) = a.matrix(c).entries();
        m.bottomRightCorner(nb, nb) = b.matrix(c).entries();
        out.transitions.emplace(c, StochMatrix(std::move(m)));
    }
    {
        RatVector init_col(n);
        const RatMatrix& ha = a.matrix(kHash).entries();
        const RatMatrix& hb = b.matrix(kHash).entries();
        for (Eigen::Index i = 0; i < na; ++i) init_col(i) = kHalf * ha(i, a.initial);
        for (Eigen::Index i = 0; i < nb; ++i) init_col(na + i) = kHalf * hb(i, b.initial);
        RatMatrix m(n, n);
        const Rational fill_den(static_cast<long>(n - 1));
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                m(i, j) = (j == out.initial) ? init_col(i) : (kOne - init_col(i)) / fill_den;
        out.transitions.emplace(kHash, StochMatrix(std::move(m)));
    }
    return out;
}

PraC complement(PraC a) {
    for (std::size_t i = 0; i < a.accepting.size(); ++i) a.accepting[i] = !a.accepting[i];
    return a;
}

PraC inverse_hom(const PraC& a, const HomomorphismSpec& h) {
    h.check();
    require_valid(a, "inverse_hom");
    for (char t : h.target)
        if (a.alphabet.find(t) == std::string::npos)
            throw Error(std::string("inverse_hom: target symbol '") + t +
                        "' is not in the automaton's alphabet");

    PraC out;
    out.states = a.states;
    out.alphabet = h.source;
    out.initial = a.initial;
    out.accepting = a.accepting;
    out.endmarkers = a.endmarkers;
    for (char c : h.source) out.transitions.emplace(c, word_matrix(a, h.images.at(c)));
    if (a.has_hash()) out.transitions.emplace(kHash, a.matrix(kHash));
    if (a.has_dollar()) out.transitions.emplace(kDollar, a.matrix(kDollar));
    return out;
}

PraC left_quotient(const PraC& a, const Word& u) {
    if (!a.has_hash()) throw Error("left_quotient: automaton has no '#' end-marker");
    require_valid(a, "left_quotient");
    PraC out = a;
    out.transitions.erase(kHash);
    out.transitions.emplace(kHash, matmul(word_matrix(a, u), a.matrix(kHash)));
    return out;
}

PraC ln_family(int n) {
    if (n < 1) throw Error("ln_family: n must be >= 1");
    if (n > 26) throw Error("ln_family: letters run out beyond n = 26");

    const Eigen::Index order = n + 1;
    PraC out;
    for (Eigen::Index i = 0; i < order; ++i) out.states.push_back("q" + std::to_string(i));
    for (int k = 0; k < n; ++k) out.alphabet.push_back(static_cast<char>('a' + k));
    out.initial = 0;
    out.accepting.assign(static_cast<std::size_t>(order), true);
    out.accepting.back() = false;
    out.endmarkers = EndmarkerMode::Both;

    for (int k = 1; k <= n; ++k) {
        RatMatrix m = RatMatrix::Zero(order, order);
        const Rational head(1, k);
        const Rational tail(1, n - k + 1);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) m(i, j) = head;
        for (Eigen::Index i = k; i < order; ++i)
            for (Eigen::Index j = k; j < order; ++j) m(i, j) = tail;
        out.transitions.emplace(static_cast<char>('a' + (k - 1)), StochMatrix(std::move(m)));
    }
    out.transitions.emplace(kHash, StochMatrix::identity(order));
    out.transitions.emplace(kDollar, StochMatrix::identity(order));
    return out;
}

PraC strip_dollar(const PraC& a, int m) {
    if (m <= 0) throw Error("strip_dollar: m must be positive");
    if (!a.has_dollar()) throw Error("strip_dollar: automaton has no '$' end-marker");
    if (!a.has_hash()) throw Error("strip_dollar: automaton has no '#' end-marker");
    require_valid(a, "strip_dollar");

    const Eigen::Index n = a.order();
    const Eigen::Index nm = n * static_cast<Eigen::Index>(m);
    const Rational copies(m);

    // p(q_i): mass state i sends into the accepting set when '$' is read.
    RatVector p(n);
    const RatMatrix& dollar = a.matrix(kDollar).entries();
    for (Eigen::Index j = 0; j < n; ++j) {
        Rational sum;
        for (Eigen::Index i = 0; i < n; ++i)
            if (a.accepting[static_cast<std::size_t>(i)]) sum += dollar(i, j);
        p(j) = sum;
    }

    PraC out;
    out.alphabet = a.alphabet;
    out.endmarkers = EndmarkerMode::HashOnly;
    out.initial = a.initial * m;
    for (Eigen::Index i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) {
            out.states.push_back(a.states[static_cast<std::size_t>(i)] + "." + std::to_string(k));
            out.accepting.push_back(Rational(k) < copies * p(i));
        }

    const StochMatrix lane = StochMatrix::identity(m);
    for (char c : a.alphabet) out.transitions.emplace(c, kron(a.matrix(c), lane));

    {
        const RatMatrix& old_hash = a.matrix(kHash).entries();
        RatVector init_col(nm);
        const Rational share = kOne / copies;
        for (Eigen::Index j = 0; j < n; ++j)
            for (int k = 0; k < m; ++k) init_col(j * m + k) = share * old_hash(j, a.initial);
        RatMatrix hash(nm, nm);
        const Rational fill_den(static_cast<long>(nm - 1));
        for (Eigen::Index j = 0; j < nm; ++j)
            for (Eigen::Index i = 0; i < nm; ++i)
                hash(i, j) = (j == out.initial) ? init_col(i) : (kOne - init_col(i)) / fill_den;
        out.transitions.emplace(kHash, StochMatrix(std::move(hash)));
    }
    return out;
}

DirichletCopies dirichlet_copies(const std::vector<Rational>& probs, const Rational& phi) {
    if (probs.empty()) throw Error("dirichlet_copies: empty probability list");
    const Rational bound = std::min(Rational(1, static_cast<long>(probs.size())), kOne);
    if (!(phi > kZero && phi < bound))
        throw Error("dirichlet_copies: phi must satisfy 0 < phi < min(1/m, 1)");
    Rational total;
    for (const auto& p : probs) {
        if (!(p > kZero)) throw Error("dirichlet_copies: probabilities must be positive");
        total += p;
    }
    if (total != kOne) throw Error("dirichlet_copies: probabilities sum to " + total.str());

    for (long n = 1;; ++n) {
        DirichletCopies result;
        result.n = n;
        bool all_ok = true;
        long gsum = 0;
        for (const auto& p : probs) {
            const Rational r = p * Rational(n);
            mpz_class nearest = floor_of(r + kHalf);
            if (nearest < 1) nearest = 1;
            const long g = to_long_checked(nearest, "dirichlet_copies");
            if (!(abs(r - Rational(g)) < phi)) {
                all_ok = false;
                break;
            }
            result.g.push_back(g);
            gsum += g;
        }
        if (all_ok) {
            if (gsum != n)
                throw Error("dirichlet_copies: internal: copy counts sum to " + std::to_string(gsum) +
                            " instead of " + std::to_string(n));
            return result;
        }
    }
}

namespace {

// The input automaton, '#' dropped, restricted to the states reachable from
// `start`. Restriction to a forward-closed set of a doubly stochastic family
// is doubly stochastic again, so this is acceptance-preserving.
struct BranchAutomaton {
    std::vector<Eigen::Index> support;  // original state indices, ascending
    Eigen::Index initial = 0;           // index into support
    std::vector<bool> accepting;
    std::map<char, RatMatrix> letters;
};

BranchAutomaton restrict_branch(const PraC& a, Eigen::Index start) {
    std::set<Eigen::Index> closed{start};
    std::deque<Eigen::Index> work{start};
    while (!work.empty()) {
        const Eigen::Index j = work.front();
        work.pop_front();
        for (char c : a.alphabet) {
            const RatMatrix& m = a.matrix(c).entries();
            for (Eigen::Index i = 0; i < a.order(); ++i)
                if (!m(i, j).is_zero() && closed.insert(i).second) work.push_back(i);
        }
    }

    BranchAutomaton br;
    br.support.assign(closed.begin(), closed.end());
    const auto local = [&](Eigen::Index global) {
        return static_cast<Eigen::Index>(
            std::lower_bound(br.support.begin(), br.support.end(), global) - br.support.begin());
    };
    br.initial = local(start);
    const Eigen::Index k = static_cast<Eigen::Index>(br.support.size());
    for (const auto s : br.support) br.accepting.push_back(a.accepting[static_cast<std::size_t>(s)]);
    for (char c : a.alphabet) {
        const RatMatrix& m = a.matrix(c).entries();
        RatMatrix sub(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(br.support[static_cast<std::size_t>(i)], br.support[static_cast<std::size_t>(j)]);
        const ClassifyVerdict v = classify_matrix(sub);
        if (v.kind < MatrixKind::DoublyStochastic)
            throw Error("strip_hash: internal: branch restriction lost double stochasticity");
        br.letters.emplace(c, std::move(sub));
    }
    return br;
}

}  // namespace

PraC strip_hash(const PraC& a, const Rational& a1, const Rational& a2, const Rational& eps,
                long n_copies, Eigen::Index state_budget) {
    if (a.endmarkers != EndmarkerMode::HashOnly)
        throw Error("strip_hash: automaton must have a '#' end-marker only");
    if (!(a1 >= kZero && a2 <= kOne && a1 < a2)) throw Error("strip_hash: need 0 <= a1 < a2 <= 1");
    if (!(eps > kZero && eps < (a2 - a1) / (a2 + a1)))
        throw Error("strip_hash: eps out of range (0, (a2-a1)/(a2+a1))");
    if (n_copies < 1) throw Error("strip_hash: n_copies must be >= 1");
    require_valid(a, "strip_hash");

    // Branch decomposition of the '#' column of the initial state.
    std::vector<Eigen::Index> targets;
    std::vector<Rational> probs;
    const RatMatrix& hash = a.matrix(kHash).entries();
    for (Eigen::Index i = 0; i < a.order(); ++i)
        if (!hash(i, a.initial).is_zero()) {
            targets.push_back(i);
            probs.push_back(hash(i, a.initial));
        }

    const Rational phi = std::min(eps, Rational(1, static_cast<long>(probs.size()))) * kHalf;
    const DirichletCopies dc = dirichlet_copies(probs, phi);
    if (n_copies % dc.n != 0)
        throw Error("strip_hash: n_copies = " + std::to_string(n_copies) +
                    " is not a multiple of the Dirichlet n = " + std::to_string(dc.n));
    const long k = n_copies / dc.n;

    const Rational delta = (a1 + a2) * kHalf;
    if (!(a2 / (kOne + eps) > delta && a1 / (kOne - eps) < delta))
        throw Error("strip_hash: internal: majority threshold escaped its bracket");

    // One coordinate automaton per copy, branch i repeated k * g_i times.
    std::vector<BranchAutomaton> branches;
    for (const auto t : targets) branches.push_back(restrict_branch(a, t));
    std::vector<const BranchAutomaton*> coords;
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (long c = 0; c < k * dc.g[i]; ++c) coords.push_back(&branches[i]);

    Eigen::Index total = 1;
    for (const auto* br : coords) {
        const auto sz = static_cast<Eigen::Index>(br->support.size());
        if (total > state_budget / sz + 1) throw Error("strip_hash: state budget exceeded");
        total *= sz;
        if (total > state_budget) throw Error("strip_hash: state budget exceeded");
    }

    PraC out;
    out.alphabet = a.alphabet;
    out.endmarkers = EndmarkerMode::None;

    const Rational bar = Rational(n_copies) * delta;
    std::vector<Eigen::Index> digits(coords.size());
    for (Eigen::Index code = 0; code < total; ++code) {
        Eigen::Index rest = code;
        for (std::size_t i = coords.size(); i-- > 0;) {
            const auto sz = static_cast<Eigen::Index>(coords[i]->support.size());
            digits[i] = rest % sz;
            rest /= sz;
        }
        long acc = 0;
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i]->accepting[static_cast<std::size_t>(digits[i])]) ++acc;
            parts.push_back(a.states[static_cast<std::size_t>(coords[i]->support[static_cast<std::size_t>(digits[i])])]);
        }
        out.states.push_back(joined_name(parts));
        out.accepting.push_back(Rational(acc) > bar);
    }

    Eigen::Index initial_code = 0;
    for (const auto* br : coords)
        initial_code = initial_code * static_cast<Eigen::Index>(br->support.size()) + br->initial;
    out.initial = initial_code;

    for (char c : a.alphabet) {
        StochMatrix acc = StochMatrix(coords.front()->letters.at(c));
        for (std::size_t i = 1; i < coords.size(); ++i)
            acc = kron(acc, StochMatrix(coords[i]->letters.at(c)));
        out.transitions.emplace(c, std::move(acc));
    }
    return out;
}

}  // namespace dsa
