#include "dsa/regclass.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace dsa {

// ---------------------------------------------------------------------------
// Regex parsing

namespace {

constexpr const char* kMetaChars = "()|,*";

bool is_meta(char c) { return std::string_view(kMetaChars).find(c) != std::string_view::npos; }

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::set<char> seen;

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool done() const { return pos >= text.size(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("regex syntax error at position " + std::to_string(pos) + ": " + what);
    }

    RegexPtr make(RegexNode n) { return std::make_shared<const RegexNode>(std::move(n)); }

    RegexPtr parse_alt() {
        RegexPtr lhs = parse_cat();
        while (peek() == '|' || peek() == ',') {
            ++pos;
            RegexPtr rhs = parse_cat();
            lhs = make({RegexNode::Op::Alt, 0, lhs, rhs});
        }
        return lhs;
    }

    RegexPtr parse_cat() {
        RegexPtr lhs;
        while (!done() && peek() != '|' && peek() != ',' && peek() != ')') {
            RegexPtr f = parse_factor();
            lhs = lhs ? make({RegexNode::Op::Concat, 0, lhs, f}) : f;
        }
        if (!lhs) lhs = make({RegexNode::Op::Empty, 0, nullptr, nullptr});
        return lhs;
    }

    RegexPtr parse_factor() {
        RegexPtr atom = parse_atom();
        while (peek() == '*') {
            ++pos;
            atom = make({RegexNode::Op::Star, 0, atom, nullptr});
        }
        return atom;
    }

    RegexPtr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            RegexPtr inner = parse_alt();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return inner;
        }
        if (c == '*') fail("'*' needs something to repeat");
        if (done() || is_meta(c)) fail("expected a literal or '('");
        ++pos;
        seen.insert(c);
        return make({RegexNode::Op::Literal, c, nullptr, nullptr});
    }
};

void collect_literals(const RegexPtr& n, std::set<char>& out) {
    if (!n) return;
    if (n->op == RegexNode::Op::Literal) out.insert(n->literal);
    collect_literals(n->lhs, out);
    collect_literals(n->rhs, out);
}

}  // namespace

Regex parse_regex(const std::string& text) { return parse_regex(text, std::string()); }

Regex parse_regex(const std::string& text, std::string alphabet) {
    Parser p{text, 0, {}};
    RegexPtr root = p.parse_alt();
    if (!p.done()) p.fail("unexpected '" + std::string(1, p.peek()) + "'");

    std::set<char> lits;
    collect_literals(root, lits);
    if (alphabet.empty()) {
        alphabet.assign(lits.begin(), lits.end());
    } else {
        std::sort(alphabet.begin(), alphabet.end());
        alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
        for (char c : lits)
            if (alphabet.find(c) == std::string::npos)
                throw Error(std::string("regex literal '") + c + "' not in the declared alphabet");
    }
    return Regex{root, std::move(alphabet)};
}

// ---------------------------------------------------------------------------
// DFA basics

int Dfa::sym_index(char c) const {
    const auto at = alphabet.find(c);
    if (at == std::string::npos) throw Error(std::string("unknown symbol '") + c + "'");
    return static_cast<int>(at);
}

int Dfa::run_from(int q, const Word& w) const {
    for (char c : w) q = step(q, c);
    return q;
}

bool Dfa::accepts(const Word& w) const {
    return accepting[static_cast<std::size_t>(run_from(initial, w))];
}

void Dfa::check() const {
    const std::size_t n = delta.size();
    if (n == 0) throw Error("dfa: no states");
    if (accepting.size() != n) throw Error("dfa: accepting flags do not match the state count");
    if (initial < 0 || static_cast<std::size_t>(initial) >= n) throw Error("dfa: initial state out of range");
    if (!names.empty() && names.size() != n) throw Error("dfa: state names do not match the state count");
    for (const auto& row : delta) {
        if (row.size() != alphabet.size()) throw Error("dfa: transition row is not total");
        for (int t : row)
            if (t < 0 || static_cast<std::size_t>(t) >= n) throw Error("dfa: transition target out of range");
    }
}

// ---------------------------------------------------------------------------
// Thompson construction + subset construction

namespace {

struct Nfa {
    // eps[q] = epsilon successors; step[q][sym] = successors.
    std::vector<std::vector<int>> eps;
    std::vector<std::vector<std::vector<int>>> step;
    int start = 0, accept = 0;
    int nsyms = 0;

    int add_state() {
        eps.emplace_back();
        step.emplace_back(static_cast<std::size_t>(nsyms));
        return static_cast<int>(eps.size()) - 1;
    }
};

struct Frag {
    int in, out;
};

Frag build_frag(Nfa& nfa, const RegexPtr& n, const std::string& alphabet) {
    switch (n->op) {
        case RegexNode::Op::Empty: {
            const int s = nfa.add_state();
            return {s, s};
        }
        case RegexNode::Op::Literal: {
            const int s = nfa.add_state();
            const int t = nfa.add_state();
            const auto sym = alphabet.find(n->literal);
            nfa.step[static_cast<std::size_t>(s)][sym].push_back(t);
            return {s, t};
        }
        case RegexNode::Op::Concat: {
            const Frag a = build_frag(nfa, n->lhs, alphabet);
            const Frag b = build_frag(nfa, n->rhs, alphabet);
            nfa.eps[static_cast<std::size_t>(a.out)].push_back(b.in);
            return {a.in, b.out};
        }
        case RegexNode::Op::Alt: {
            const Frag a = build_frag(nfa, n->lhs, alphabet);
            const Frag b = build_frag(nfa, n->rhs, alphabet);
            const int s = nfa.add_state();
            const int t = nfa.add_state();
            nfa.eps[static_cast<std::size_t>(s)].push_back(a.in);
            nfa.eps[static_cast<std::size_t>(s)].push_back(b.in);
            nfa.eps[static_cast<std::size_t>(a.out)].push_back(t);
            nfa.eps[static_cast<std::size_t>(b.out)].push_back(t);
            return {s, t};
        }
        case RegexNode::Op::Star: {
            const Frag a = build_frag(nfa, n->lhs, alphabet);
            const int s = nfa.add_state();
            nfa.eps[static_cast<std::size_t>(s)].push_back(a.in);
            nfa.eps[static_cast<std::size_t>(a.out)].push_back(s);
            return {s, s};
        }
    }
    throw Error("regex: unreachable");
}

std::set<int> eps_closure(const Nfa& nfa, std::set<int> states) {
    std::deque<int> work(states.begin(), states.end());
    while (!work.empty()) {
        const int q = work.front();
        work.pop_front();
        for (int t : nfa.eps[static_cast<std::size_t>(q)])
            if (states.insert(t).second) work.push_back(t);
    }
    return states;
}

}  // namespace

Dfa build_dfa(const Regex& r) {
    Nfa nfa;
    nfa.nsyms = static_cast<int>(r.alphabet.size());
    const Frag f = build_frag(nfa, r.root, r.alphabet);
    nfa.start = f.in;
    nfa.accept = f.out;

    Dfa d;
    d.alphabet = r.alphabet;

    std::map<std::set<int>, int> index;
    std::vector<std::set<int>> subsets;
    const auto intern = [&](std::set<int> s) {
        const auto [it, fresh] = index.emplace(std::move(s), static_cast<int>(subsets.size()));
        if (fresh) {
            subsets.push_back(it->first);
            d.delta.emplace_back(r.alphabet.size(), -1);
            d.accepting.push_back(it->first.count(nfa.accept) > 0);
        }
        return it->second;
    };

    d.initial = intern(eps_closure(nfa, {nfa.start}));
    for (int q = 0; q < static_cast<int>(subsets.size()); ++q) {
        for (std::size_t s = 0; s < r.alphabet.size(); ++s) {
            std::set<int> next;
            for (int u : subsets[static_cast<std::size_t>(q)]) {
                const auto& tgt = nfa.step[static_cast<std::size_t>(u)][s];
                next.insert(tgt.begin(), tgt.end());
            }
            d.delta[static_cast<std::size_t>(q)][s] = intern(eps_closure(nfa, std::move(next)));
        }
    }
    for (int q = 0; q < d.size(); ++q) d.names.push_back("s" + std::to_string(q));
    d.check();
    return d;
}

// ---------------------------------------------------------------------------
// Minimization

Dfa minimize(const Dfa& d) {
    d.check();
    const int n = d.size();
    const std::size_t nsyms = d.alphabet.size();

    // Reachable part first.
    std::vector<int> reach_id(static_cast<std::size_t>(n), -1);
    std::vector<int> order;
    reach_id[static_cast<std::size_t>(d.initial)] = 0;
    order.push_back(d.initial);
    for (std::size_t at = 0; at < order.size(); ++at)
        for (std::size_t s = 0; s < nsyms; ++s) {
            const int t = d.delta[static_cast<std::size_t>(order[at])][s];
            if (reach_id[static_cast<std::size_t>(t)] < 0) {
                reach_id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }

    // Moore partition refinement on the reachable states.
    const int m = static_cast<int>(order.size());
    std::vector<int> block(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q)
        block[static_cast<std::size_t>(q)] = d.accepting[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])] ? 1 : 0;

    for (;;) {
        std::map<std::vector<int>, int> sig_index;
        std::vector<int> next(static_cast<std::size_t>(m));
        for (int q = 0; q < m; ++q) {
            std::vector<int> sig;
            sig.reserve(nsyms + 1);
            sig.push_back(block[static_cast<std::size_t>(q)]);
            for (std::size_t s = 0; s < nsyms; ++s) {
                const int t = d.delta[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])][s];
                sig.push_back(block[static_cast<std::size_t>(reach_id[static_cast<std::size_t>(t)])]);
            }
            const auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size()));
            next[static_cast<std::size_t>(q)] = it->second;
        }
        const bool stable = std::equal(block.begin(), block.end(), next.begin());
        block = std::move(next);
        if (stable) break;
    }

    // Quotient automaton with a canonical BFS renaming from the initial block.
    const int nblocks = 1 + *std::max_element(block.begin(), block.end());
    std::vector<std::vector<int>> bdelta(static_cast<std::size_t>(nblocks), std::vector<int>(nsyms, -1));
    std::vector<bool> bacc(static_cast<std::size_t>(nblocks), false);
    for (int q = 0; q < m; ++q) {
        const int b = block[static_cast<std::size_t>(q)];
        bacc[static_cast<std::size_t>(b)] = d.accepting[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])];
        for (std::size_t s = 0; s < nsyms; ++s) {
            const int t = d.delta[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])][s];
            bdelta[static_cast<std::size_t>(b)][s] = block[static_cast<std::size_t>(reach_id[static_cast<std::size_t>(t)])];
        }
    }

    std::vector<int> rename(static_cast<std::size_t>(nblocks), -1);
    std::vector<int> bfs;
    const int b0 = block[static_cast<std::size_t>(reach_id[static_cast<std::size_t>(d.initial)])];
    rename[static_cast<std::size_t>(b0)] = 0;
    bfs.push_back(b0);
    for (std::size_t at = 0; at < bfs.size(); ++at)
        for (std::size_t s = 0; s < nsyms; ++s) {
            const int t = bdelta[static_cast<std::size_t>(bfs[at])][s];
            if (rename[static_cast<std::size_t>(t)] < 0) {
                rename[static_cast<std::size_t>(t)] = static_cast<int>(bfs.size());
                bfs.push_back(t);
            }
        }

    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    out.delta.assign(bfs.size(), std::vector<int>(nsyms, -1));
    out.accepting.assign(bfs.size(), false);
    for (std::size_t q = 0; q < bfs.size(); ++q) {
        out.accepting[q] = bacc[static_cast<std::size_t>(bfs[q])];
        for (std::size_t s = 0; s < nsyms; ++s)
            out.delta[q][s] = rename[static_cast<std::size_t>(bdelta[static_cast<std::size_t>(bfs[q])][s])];
        out.names.push_back("s" + std::to_string(q));
    }
    out.check();
    return out;
}

Dfa minimal_dfa_from_regex(const std::string& text) { return minimize(build_dfa(parse_regex(text))); }

Dfa minimal_dfa_from_regex(const std::string& text, std::string alphabet) {
    return minimize(build_dfa(parse_regex(text, std::move(alphabet))));
}

bool is_permutation_dfa(const Dfa& d) {
    d.check();
    const std::size_t n = static_cast<std::size_t>(d.size());
    for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
        std::vector<bool> hit(n, false);
        for (std::size_t q = 0; q < n; ++q) {
            const auto t = static_cast<std::size_t>(d.delta[q][s]);
            if (hit[t]) return false;
            hit[t] = true;
        }
    }
    return true;
}

int idempotent_power(const Dfa& d, int q, const Word& x) {
    if (x.empty()) throw Error("idempotent_power: x must be non-empty");
    const auto f = [&](int u) { return d.run_from(u, x); };
    int tortoise = f(q);
    int hare = f(f(q));
    int k = 1;
    while (tortoise != hare) {
        tortoise = f(tortoise);
        hare = f(f(hare));
        ++k;
    }
    return k;
}

// ---------------------------------------------------------------------------
// Witness searches

const char* to_string(Witness::Kind k) {
    switch (k) {
        case Witness::Kind::Star: return "(*)";
        case Witness::Kind::StarPrime: return "(*')";
        case Witness::Kind::StarDoublePrime: return "(*\")";
    }
    return "?";
}

namespace {

// Shortest word (breadth-first, symbols in alphabet order) driving a node of
// a synchronized product automaton from `start` to `target`. Nodes are tuples
// of states identified by mixed-radix encoding.
std::optional<Word> bfs_word(const Dfa& d, const std::vector<int>& start, const std::vector<int>& target) {
    const auto width = start.size();
    const auto n = static_cast<std::size_t>(d.size());
    const auto encode = [&](const std::vector<int>& node) {
        std::size_t code = 0;
        for (std::size_t i = 0; i < width; ++i) code = code * n + static_cast<std::size_t>(node[i]);
        return code;
    };

    std::size_t space = 1;
    for (std::size_t i = 0; i < width; ++i) space *= n;

    const std::size_t goal = encode(target);
    std::vector<int> prev_sym(space, -1);
    std::vector<std::size_t> prev_node(space, 0);
    std::vector<bool> seen(space, false);

    std::deque<std::pair<std::size_t, std::vector<int>>> queue;
    const std::size_t s0 = encode(start);
    seen[s0] = true;
    queue.emplace_back(s0, start);

    while (!queue.empty()) {
        auto [code, node] = queue.front();
        queue.pop_front();
        if (code == goal) {
            Word w;
            std::size_t at = code;
            while (at != s0) {
                w.push_back(d.alphabet[static_cast<std::size_t>(prev_sym[at])]);
                at = prev_node[at];
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t s = 0; s < d.alphabet.size(); ++s) {
            std::vector<int> next(width);
            for (std::size_t i = 0; i < width; ++i)
                next[i] = d.delta[static_cast<std::size_t>(node[i])][s];
            const std::size_t ncode = encode(next);
            if (!seen[ncode]) {
                seen[ncode] = true;
                prev_sym[ncode] = static_cast<int>(s);
                prev_node[ncode] = code;
                queue.emplace_back(ncode, std::move(next));
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Witness> classify_star_dprime(const Dfa& input) {
    const Dfa d = minimize(input);
    const int n = d.size();
    for (int q1 = 0; q1 < n; ++q1)
        for (int q2 = 0; q2 < n; ++q2) {
            if (q1 == q2) continue;
            auto x = bfs_word(d, {q1, q2}, {q2, q2});
            if (!x) continue;
            auto y = bfs_word(d, {q2}, {q1});
            if (!y) continue;
            Witness w;
            w.kind = Witness::Kind::StarDoublePrime;
            w.q1 = q1;
            w.q2 = q2;
            w.x = *x;
            w.y = *y;
            return w;
        }
    return std::nullopt;
}

std::optional<Witness> classify_star_prime(const Dfa& input) {
    const Dfa d = minimize(input);
    const int n = d.size();
    for (int q = 0; q < n; ++q)
        for (int q1 = 0; q1 < n; ++q1)
            for (int q2 = 0; q2 < n; ++q2) {
                if (q1 == q2) continue;
                auto x = bfs_word(d, {q, q1, q2}, {q1, q1, q2});
                if (!x) continue;
                auto y = bfs_word(d, {q, q1, q2}, {q2, q1, q2});
                if (!y) continue;
                Witness w;
                w.kind = Witness::Kind::StarPrime;
                w.q = q;
                w.q1 = q1;
                w.q2 = q2;
                w.x = *x;
                w.y = *y;
                return w;
            }
    return std::nullopt;
}

std::optional<Witness> classify_star(const Dfa& d) {
    if (auto w = classify_star_prime(d)) return w;
    return classify_star_dprime(d);
}

// ---------------------------------------------------------------------------
// Transition monoid oracle

namespace {

using Action = std::vector<int>;  // state -> state

// reach[q] = bitmask of states reachable from q (q included) following the
// two actions' edges. Fixpoint over at most n rounds; n stays tiny here.
std::vector<std::uint32_t> closure_masks(const Action& f, const Action& g) {
    const std::size_t n = f.size();
    std::vector<std::uint32_t> reach(n);
    for (std::size_t q = 0; q < n; ++q)
        reach[q] = (1u << q) | (1u << static_cast<unsigned>(f[q])) | (1u << static_cast<unsigned>(g[q]));
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t q = 0; q < n; ++q) {
            std::uint32_t next = reach[q];
            for (std::size_t u = 0; u < n; ++u)
                if (reach[q] & (1u << u)) next |= reach[u];
            if (next != reach[q]) {
                reach[q] = next;
                changed = true;
            }
        }
    }
    return reach;
}

// For all u reachable from q under steps {f, g} (epsilon included), q must be
// reachable back from u. This is the literal "for every t exists t1 returning
// to q" condition read on actions.
bool recurrent(const std::vector<std::uint32_t>& reach, int q) {
    const std::uint32_t from_q = reach[static_cast<std::size_t>(q)];
    for (std::size_t u = 0; u < reach.size(); ++u)
        if ((from_q & (1u << u)) && !(reach[u] & (1u << static_cast<unsigned>(q)))) return false;
    return true;
}

}  // namespace

std::optional<Witness> classify_star_monoid_oracle(const Dfa& input, int state_budget) {
    const Dfa d = minimize(input);
    const int n = d.size();
    if (n > state_budget)
        throw Error("monoid oracle: " + std::to_string(n) + " states exceed the budget of " +
                    std::to_string(state_budget));

    // Enumerate the transition monoid together with a shortest word for each
    // element, breadth-first so discovery order is (length, lex).
    std::map<Action, int> index;
    std::vector<Action> elems;
    std::vector<Word> words;
    Action identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    index.emplace(identity, 0);
    elems.push_back(identity);
    words.emplace_back();

    for (std::size_t at = 0; at < elems.size(); ++at) {
        const Action base = elems[at];
        const Word base_word = words[at];
        for (char c : d.alphabet) {
            Action next(static_cast<std::size_t>(n));
            for (int q = 0; q < n; ++q)
                next[static_cast<std::size_t>(q)] =
                    d.delta[static_cast<std::size_t>(base[static_cast<std::size_t>(q)])][static_cast<std::size_t>(d.sym_index(c))];
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(next));
                words.push_back(base_word + c);
            }
        }
    }

    for (std::size_t fi = 0; fi < elems.size(); ++fi)
        for (std::size_t gi = 0; gi < elems.size(); ++gi) {
            const Action& f = elems[fi];
            const Action& g = elems[gi];
            std::vector<std::uint32_t> reach;
            for (int q = 0; q < n; ++q) {
                const int q1 = f[static_cast<std::size_t>(q)];
                const int q2 = g[static_cast<std::size_t>(q)];
                if (q1 == q2) continue;
                if (f[static_cast<std::size_t>(q1)] != q1) continue;
                if (g[static_cast<std::size_t>(q2)] != q2) continue;
                if (reach.empty()) reach = closure_masks(f, g);
                if (!recurrent(reach, q1) || !recurrent(reach, q2)) continue;
                Witness w;
                w.kind = Witness::Kind::Star;
                w.q = q;
                w.q1 = q1;
                w.q2 = q2;
                w.x = words[fi];
                w.y = words[gi];
                return w;
            }
        }
    return std::nullopt;
}

bool witness_replays(const Dfa& d, const Witness& w) {
    const auto run = [&](int q, const Word& word) { return d.run_from(q, word); };
    switch (w.kind) {
        case Witness::Kind::StarDoublePrime:
            return w.q1 != w.q2 && run(w.q1, w.x) == w.q2 && run(w.q2, w.x) == w.q2 &&
                   run(w.q2, w.y) == w.q1;
        case Witness::Kind::StarPrime:
            return w.q1 != w.q2 && run(w.q, w.x) == w.q1 && run(w.q, w.y) == w.q2 &&
                   run(w.q1, w.x) == w.q1 && run(w.q1, w.y) == w.q1 &&
                   run(w.q2, w.x) == w.q2 && run(w.q2, w.y) == w.q2;
        case Witness::Kind::Star: {
            if (w.q1 == w.q2) return false;
            const int n = d.size();
            Action fx(static_cast<std::size_t>(n)), fy(static_cast<std::size_t>(n));
            for (int q = 0; q < n; ++q) {
                fx[static_cast<std::size_t>(q)] = run(q, w.x);
                fy[static_cast<std::size_t>(q)] = run(q, w.y);
            }
            const auto reach = closure_masks(fx, fy);
            return fx[static_cast<std::size_t>(w.q)] == w.q1 && fy[static_cast<std::size_t>(w.q)] == w.q2 &&
                   fx[static_cast<std::size_t>(w.q1)] == w.q1 && fy[static_cast<std::size_t>(w.q2)] == w.q2 &&
                   recurrent(reach, w.q1) && recurrent(reach, w.q2);
        }
    }
    return false;
}

Witness prepare_probe_words(const Dfa& d, Witness w) {
    d.check();
    const int anchor = (w.kind == Witness::Kind::StarDoublePrime) ? w.q1 : w.q;
    auto omega = bfs_word(d, {d.initial}, {anchor});
    if (!omega) throw Error("prepare_probe_words: witness anchor state is unreachable");

    // Shortest word on which exactly one of q1, q2 accepts.
    std::optional<Word> z;
    {
        std::deque<std::pair<int, int>> queue;
        std::map<std::pair<int, int>, std::pair<std::pair<int, int>, char>> back;
        std::set<std::pair<int, int>> seen;
        const std::pair<int, int> start{w.q1, w.q2};
        seen.insert(start);
        queue.push_back(start);
        while (!queue.empty() && !z) {
            const auto node = queue.front();
            queue.pop_front();
            if (d.accepting[static_cast<std::size_t>(node.first)] !=
                d.accepting[static_cast<std::size_t>(node.second)]) {
                Word word;
                auto at = node;
                while (at != start) {
                    const auto& [parent, sym] = back.at(at);
                    word.push_back(sym);
                    at = parent;
                }
                std::reverse(word.begin(), word.end());
                z = word;
                break;
            }
            for (char c : d.alphabet) {
                const std::pair<int, int> next{d.step(node.first, c), d.step(node.second, c)};
                if (seen.insert(next).second) {
                    back.emplace(next, std::make_pair(node, c));
                    queue.push_back(next);
                }
            }
        }
    }
    if (!z) throw Error("prepare_probe_words: q1 and q2 are equivalent; automaton is not minimal");

    w.omega = *omega;
    w.z = *z;
    w.has_probe_words = true;
    return w;
}

}  // namespace dsa
