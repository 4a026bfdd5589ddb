#include "dsa/automata.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace dsa {

namespace {

const Rational kZero(0);
const Rational kOne(1);

void require_letter(const std::string& alphabet, char c) {
    if (alphabet.find(c) == std::string::npos)
        throw Error(std::string("unknown symbol '") + c + "' in word");
}

template <typename Automaton>
std::string working_symbols_of(const Automaton& a) {
    std::string syms = a.alphabet;
    if (a.endmarkers != EndmarkerMode::None) syms.push_back(kHash);
    if (a.endmarkers == EndmarkerMode::Both) syms.push_back(kDollar);
    return syms;
}

template <typename Automaton>
const StochMatrix& matrix_of(const Automaton& a, char symbol) {
    const auto it = a.transitions.find(symbol);
    if (it == a.transitions.end())
        throw Error(std::string("no transition matrix for symbol '") + symbol + "'");
    return it->second;
}

// Shared validation of the PraC/PraDh skeleton.
template <typename Automaton>
void validate_core(const Automaton& a, ValidationReport& report) {
    const auto n = a.order();
    if (n == 0) {
        report.violations.push_back({"automaton has no states", 0, -1});
        return;
    }
    if (a.initial < 0 || a.initial >= n)
        report.violations.push_back({"initial state out of range", 0, a.initial});
    if (static_cast<Eigen::Index>(a.accepting.size()) != n)
        report.violations.push_back({"accepting flags do not match the state count", 0, -1});

    std::set<char> letters(a.alphabet.begin(), a.alphabet.end());
    if (letters.size() != a.alphabet.size())
        report.violations.push_back({"alphabet contains duplicate symbols", 0, -1});
    if (letters.count(kHash) || letters.count(kDollar))
        report.violations.push_back({"alphabet must not contain end-markers", 0, -1});

    const std::string expected = a.working_symbols();
    for (char c : expected)
        if (!a.transitions.count(c))
            report.violations.push_back({"missing transition matrix", c, -1});
    for (const auto& [sym, mat] : a.transitions) {
        if (expected.find(sym) == std::string::npos) {
            report.violations.push_back({"transition matrix for a symbol outside the working alphabet", sym, -1});
            continue;
        }
        if (mat.order() != n) {
            report.violations.push_back({"matrix order does not match the state count", sym, -1});
            continue;
        }
        if (!mat.is_doubly_stochastic()) {
            const ClassifyVerdict v = classify_matrix(mat.entries());
            report.violations.push_back(
                {"matrix is not doubly stochastic: " + v.detail, sym,
                 v.bad_column >= 0 ? v.bad_column : v.bad_row});
        }
    }
}

}  // namespace

const char* to_string(EndmarkerMode m) {
    switch (m) {
        case EndmarkerMode::Both: return "both";
        case EndmarkerMode::HashOnly: return "hash";
        case EndmarkerMode::None: return "none";
    }
    return "?";
}

std::string PraC::working_symbols() const { return working_symbols_of(*this); }
std::string PraDh::working_symbols() const { return working_symbols_of(*this); }

std::string Pra15::working_symbols() const {
    std::string syms = alphabet;
    syms.push_back(kHash);
    syms.push_back(kDollar);
    return syms;
}

const StochMatrix& PraC::matrix(char symbol) const { return matrix_of(*this, symbol); }
const StochMatrix& PraDh::matrix(char symbol) const { return matrix_of(*this, symbol); }

const Pra15::DirPair& Pra15::grids(char symbol) const {
    const auto it = transitions.find(symbol);
    if (it == transitions.end())
        throw Error(std::string("no transition grids for symbol '") + symbol + "'");
    return it->second;
}

ValidationReport validate(const PraC& a) {
    ValidationReport report;
    validate_core(a, report);
    return report;
}

ValidationReport validate(const PraDh& a) {
    ValidationReport report;
    validate_core(a, report);
    if (a.rejecting.size() != a.states.size()) {
        report.violations.push_back({"rejecting flags do not match the state count", 0, -1});
        return report;
    }
    for (Eigen::Index q = 0; q < a.order(); ++q)
        if (a.accepting[static_cast<std::size_t>(q)] && a.rejecting[static_cast<std::size_t>(q)])
            report.violations.push_back({"state is both accepting and rejecting", 0, q});
    return report;
}

ValidationReport validate_pra15(const Pra15& a) {
    ValidationReport report;
    const auto n = a.order();
    if (n == 0) {
        report.violations.push_back({"automaton has no states", 0, -1});
        return report;
    }
    if (a.initial < 0 || a.initial >= n)
        report.violations.push_back({"initial state out of range", 0, a.initial});
    if (static_cast<Eigen::Index>(a.accepting.size()) != n)
        report.violations.push_back({"accepting flags do not match the state count", 0, -1});

    const std::string expected = a.working_symbols();
    for (char c : expected)
        if (!a.transitions.count(c)) report.violations.push_back({"missing transition grids", c, -1});

    for (const auto& [sym, pair] : a.transitions) {
        if (expected.find(sym) == std::string::npos) {
            report.violations.push_back({"grids for a symbol outside the working alphabet", sym, -1});
            continue;
        }
        if (pair.stay.rows() != n || pair.stay.cols() != n || pair.advance.rows() != n ||
            pair.advance.cols() != n) {
            report.violations.push_back({"grid order does not match the state count", sym, -1});
            continue;
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (pair.stay(i, j) < kZero || pair.stay(i, j) > kOne ||
                    pair.advance(i, j) < kZero || pair.advance(i, j) > kOne) {
                    report.violations.push_back({"grid entry outside [0,1]", sym, i});
                }

        // Outgoing sums, required by both flavors: source state = column.
        for (Eigen::Index j = 0; j < n; ++j) {
            Rational sum;
            for (Eigen::Index i = 0; i < n; ++i) sum += pair.stay(i, j) + pair.advance(i, j);
            if (sum != kOne)
                report.violations.push_back(
                    {"outgoing probabilities sum to " + sum.str(), sym, j});
        }
    }

    if (!report.ok()) return report;

    if (a.flavor == Pra15::Flavor::Weak) {
        // Incoming sums over (state, direction) pairs.
        for (char sym : expected) {
            const auto& pair = a.grids(sym);
            for (Eigen::Index i = 0; i < n; ++i) {
                Rational sum;
                for (Eigen::Index j = 0; j < n; ++j) sum += pair.stay(i, j) + pair.advance(i, j);
                if (sum != kOne)
                    report.violations.push_back(
                        {"incoming probabilities sum to " + sum.str(), sym, i});
            }
        }
    } else {
        // Incoming configuration mass: same-position stay moves reading s1
        // plus previous-position advance moves reading s2.
        for (char s1 : expected)
            for (char s2 : expected) {
                const auto& g1 = a.grids(s1);
                const auto& g2 = a.grids(s2);
                for (Eigen::Index i = 0; i < n; ++i) {
                    Rational sum;
                    for (Eigen::Index j = 0; j < n; ++j) sum += g1.stay(i, j) + g2.advance(i, j);
                    if (sum != kOne)
                        report.violations.push_back(
                            {std::string("incoming mass for (state, '") + s1 + "', '" + s2 +
                                 "') sums to " + sum.str(),
                             s1, i});
                }
            }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Acceptance

namespace {

Rational mass_on(const std::vector<bool>& flags, const RatVector& dist) {
    Rational sum;
    for (Eigen::Index i = 0; i < dist.size(); ++i)
        if (flags[static_cast<std::size_t>(i)]) sum += dist(i);
    return sum;
}

}  // namespace

Rational accept_prob_c(const PraC& a, const Word& w) {
    for (char c : w) require_letter(a.alphabet, c);
    Distribution dist = Distribution::point(a.order(), a.initial);
    if (a.has_hash()) dist = apply(a.matrix(kHash), dist);
    for (char c : w) dist = apply(a.matrix(c), dist);
    if (a.has_dollar()) dist = apply(a.matrix(kDollar), dist);
    return mass_on(a.accepting, dist.weights());
}

DhOutcome accept_prob_dh(const PraDh& a, const Word& w) {
    for (char c : w) require_letter(a.alphabet, c);

    RatVector dist = RatVector::Zero(a.order());
    dist(a.initial) = kOne;
    DhOutcome out{kZero, kZero, kZero};

    const auto feed = [&](char symbol) {
        dist = (a.matrix(symbol).entries() * dist).eval();
        for (Eigen::Index i = 0; i < dist.size(); ++i) {
            if (a.accepting[static_cast<std::size_t>(i)]) {
                out.accept += dist(i);
                dist(i) = kZero;
            } else if (a.rejecting[static_cast<std::size_t>(i)]) {
                out.reject += dist(i);
                dist(i) = kZero;
            }
        }
    };

    if (a.has_hash()) feed(kHash);
    for (char c : w) feed(c);
    if (a.has_dollar()) feed(kDollar);

    for (Eigen::Index i = 0; i < dist.size(); ++i) out.nonhalt += dist(i);
    return out;
}

StochMatrix word_matrix(const PraC& a, const Word& w) {
    StochMatrix acc = StochMatrix::identity(a.order());
    for (char c : w) {
        require_letter(a.alphabet, c);
        acc = matmul(a.matrix(c), acc);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Recognition intervals

namespace {

struct IntervalFolder {
    RecognitionInterval out;

    void feed(const Rational& acceptance, bool member) {
        if (member) {
            if (!out.saw_member || acceptance < out.p2) out.p2 = acceptance;
            out.saw_member = true;
        } else {
            if (!out.saw_nonmember || acceptance > out.p1) out.p1 = acceptance;
            out.saw_nonmember = true;
        }
    }
};

std::vector<Rational> key_of(const RatVector& v) {
    return std::vector<Rational>(v.data(), v.data() + v.size());
}

}  // namespace

RecognitionInterval recognition_interval(const PraC& a, const Dfa& member, int max_len) {
    if (max_len < 0) throw Error("recognition_interval: max_len must be >= 0");

    // Acceptance weight per automaton state: mass contributed to the final
    // accepting set once '$' (when present) is applied.
    RatVector acc_weight(a.order());
    for (Eigen::Index j = 0; j < a.order(); ++j) {
        if (a.has_dollar()) {
            Rational sum;
            const StochMatrix& dollar = a.matrix(kDollar);
            for (Eigen::Index i = 0; i < a.order(); ++i)
                if (a.accepting[static_cast<std::size_t>(i)]) sum += dollar(i, j);
            acc_weight(j) = sum;
        } else {
            acc_weight(j) = a.accepting[static_cast<std::size_t>(j)] ? kOne : kZero;
        }
    }

    // Membership DFA state; -1 is a dead sink for letters it does not know.
    const auto dfa_step = [&](int q, char c) -> int {
        if (q < 0) return -1;
        if (member.alphabet.find(c) == std::string::npos) return -1;
        return member.step(q, c);
    };
    const auto dfa_accepts = [&](int q) {
        return q >= 0 && member.accepting[static_cast<std::size_t>(q)];
    };

    RatVector start = RatVector::Zero(a.order());
    start(a.initial) = kOne;
    if (a.has_hash()) start = (a.matrix(kHash).entries() * start).eval();

    IntervalFolder fold;
    fold.out.max_len = max_len;

    using NodeKey = std::pair<int, std::vector<Rational>>;
    std::set<NodeKey> seen;
    std::deque<std::pair<std::pair<int, RatVector>, int>> frontier;  // ((dfa, dist), depth)

    const auto visit = [&](int dq, const RatVector& dist, int depth) {
        NodeKey key{dq, key_of(dist)};
        if (!seen.insert(std::move(key)).second) return false;
        Rational acceptance;
        for (Eigen::Index i = 0; i < dist.size(); ++i) acceptance += acc_weight(i) * dist(i);
        fold.feed(acceptance, dfa_accepts(dq));
        if (depth < max_len) frontier.push_back({{dq, dist}, depth});
        return true;
    };

    visit(member.initial, start, 0);
    while (!frontier.empty()) {
        const auto [node, depth] = frontier.front();
        frontier.pop_front();
        for (char c : a.alphabet) {
            RatVector next = a.matrix(c).entries() * node.second;
            visit(dfa_step(node.first, c), next, depth + 1);
        }
    }
    return fold.out;
}

namespace {

template <typename EvalState, typename Feed, typename Extend>
void enumerate_words(const std::string& alphabet, int max_len, EvalState root, Feed&& feed,
                     Extend&& extend) {
    struct Item {
        EvalState state;
        Word word;
    };
    std::deque<Item> queue;
    queue.push_back({std::move(root), Word{}});
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        feed(item.state, item.word);
        if (static_cast<int>(item.word.size()) < max_len)
            for (char c : alphabet) queue.push_back({extend(item.state, c), item.word + c});
    }
}

}  // namespace

RecognitionInterval recognition_interval(const PraC& a,
                                         const std::function<bool(const Word&)>& member,
                                         int max_len) {
    if (max_len < 0) throw Error("recognition_interval: max_len must be >= 0");

    IntervalFolder fold;
    fold.out.max_len = max_len;

    RatVector start = RatVector::Zero(a.order());
    start(a.initial) = kOne;
    if (a.has_hash()) start = (a.matrix(kHash).entries() * start).eval();

    enumerate_words(
        a.alphabet, max_len, start,
        [&](const RatVector& dist, const Word& w) {
            RatVector fin = a.has_dollar() ? (a.matrix(kDollar).entries() * dist).eval() : dist;
            fold.feed(mass_on(a.accepting, fin), member(w));
        },
        [&](const RatVector& dist, char c) { return (a.matrix(c).entries() * dist).eval(); });
    return fold.out;
}

RecognitionInterval recognition_interval(const PraDh& a,
                                         const std::function<bool(const Word&)>& member,
                                         int max_len) {
    if (max_len < 0) throw Error("recognition_interval: max_len must be >= 0");

    IntervalFolder fold;
    fold.out.max_len = max_len;

    struct DhState {
        RatVector dist;
        Rational accept;
    };

    const auto feed_symbol = [&](DhState s, char symbol) {
        s.dist = (a.matrix(symbol).entries() * s.dist).eval();
        for (Eigen::Index i = 0; i < s.dist.size(); ++i) {
            if (a.accepting[static_cast<std::size_t>(i)]) {
                s.accept += s.dist(i);
                s.dist(i) = kZero;
            } else if (a.rejecting[static_cast<std::size_t>(i)]) {
                s.dist(i) = kZero;
            }
        }
        return s;
    };

    DhState root{RatVector::Zero(a.order()), kZero};
    root.dist(a.initial) = kOne;
    if (a.has_hash()) root = feed_symbol(std::move(root), kHash);

    enumerate_words(
        a.alphabet, max_len, std::move(root),
        [&](const DhState& s, const Word& w) {
            const Rational acceptance =
                a.has_dollar() ? feed_symbol(s, kDollar).accept : s.accept;
            fold.feed(acceptance, member(w));
        },
        [&](const DhState& s, char c) { return feed_symbol(s, c); });
    return fold.out;
}

PraC reverse_transitions(const PraC& a) {
    PraC out = a;
    for (auto& [sym, mat] : out.transitions) mat = transpose(mat);
    return out;
}

// ---------------------------------------------------------------------------
// 1.5-way simulation

Pra15RunStats simulate_pra15(const Pra15& a, const Word& w, long trials, long max_steps,
                             std::uint64_t seed) {
    if (trials < 1) throw Error("simulate_pra15: trials must be >= 1");
    if (max_steps < 1) throw Error("simulate_pra15: max_steps must be >= 1");
    for (char c : w) require_letter(a.alphabet, c);

    const std::string tape = std::string(1, kHash) + w + std::string(1, kDollar);
    const auto n = static_cast<std::size_t>(a.order());

    // Sampling tables: per (tape symbol, state) the cumulative distribution
    // over (next state, direction).
    struct Move {
        double cum;
        int state;
        int dir;
    };
    std::map<char, std::vector<std::vector<Move>>> tables;
    for (char c : a.working_symbols()) {
        const auto& pair = a.grids(c);
        std::vector<std::vector<Move>> per_state(n);
        for (std::size_t j = 0; j < n; ++j) {
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double p0 = pair.stay(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).to_double();
                if (p0 > 0.0) per_state[j].push_back({cum += p0, static_cast<int>(i), 0});
                const double p1 = pair.advance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).to_double();
                if (p1 > 0.0) per_state[j].push_back({cum += p1, static_cast<int>(i), 1});
            }
            if (!per_state[j].empty()) per_state[j].back().cum = 1.0;
        }
        tables.emplace(c, std::move(per_state));
    }

    std::mt19937_64 rng(seed);
    const auto uniform01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    Pra15RunStats stats;
    stats.trials = trials;
    long long steps_halting = 0;

    for (long t = 0; t < trials; ++t) {
        std::size_t pos = 0;
        int state = static_cast<int>(a.initial);
        bool halted = false;
        for (long step = 1; step <= max_steps; ++step) {
            const auto& moves = tables.at(tape[pos])[static_cast<std::size_t>(state)];
            const double u = uniform01();
            const Move* chosen = &moves.back();
            for (const Move& m : moves)
                if (u < m.cum) {
                    chosen = &m;
                    break;
                }
            state = chosen->state;
            pos += static_cast<std::size_t>(chosen->dir);
            if (pos == tape.size()) {
                halted = true;
                steps_halting += step;
                if (a.accepting[static_cast<std::size_t>(state)])
                    ++stats.accepted;
                else
                    ++stats.rejected;
                break;
            }
        }
        if (!halted) ++stats.timeouts;
    }
    if (stats.halted() > 0)
        stats.mean_steps_halting = static_cast<double>(steps_halting) / static_cast<double>(stats.halted());
    return stats;
}

}  // namespace dsa
