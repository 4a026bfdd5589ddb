#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include "dsa/constructions.hpp"

using namespace dsa;
using namespace dsa::testutil;

namespace {

// FIX-L2 variant whose '$' matrix sends fractional mass into the accepting
// set: p(q0) = 1, p(q1) = 3/4, p(q2) = 1/4, giving source interval (3/4, 7/8)
// against a*b* at horizon 6.
PraC l2_with_mixing_dollar() {
    PraC a = fix_l2_by_hand();
    a.transitions.erase('$');
    a.transitions.emplace('$', StochMatrix(mat({{"1", "0", "0"},
                                                {"0", "3/4", "1/4"},
                                                {"0", "1/4", "3/4"}})));
    return a;
}

}  // namespace

TEST_CASE("ln_family") {
    SUBCASE("n=2 reproduces the hand-built fixture") {
        const PraC ln = ln_family(2);
        const PraC fix = fix_l2_by_hand();
        REQUIRE(ln.alphabet == fix.alphabet);
        for (char c : ln.working_symbols()) CHECK(ln.matrix(c) == fix.matrix(c));
        CHECK(ln.accepting == fix.accepting);
    }
    SUBCASE("every member is accepted with probability 1") {
        const PraC l3 = ln_family(3);
        REQUIRE(validate(l3).ok());
        const Dfa lang = minimal_dfa_from_regex("a*b*c*");
        for (const Word& w : words_up_to("abc", 5))
            if (lang.accepts(w)) CHECK(accept_prob_c(l3, w) == rat("1"));
    }
    SUBCASE("intervals match the closed form for small n") {
        CHECK(recognition_interval(ln_family(2), minimal_dfa_from_regex("a*b*"), 6).p1 == rat("3/4"));
        const auto iv3 = recognition_interval(ln_family(3), minimal_dfa_from_regex("a*b*c*"), 8);
        CHECK(iv3.p1 == rat("5/6"));
        CHECK(iv3.p2 == rat("1"));
    }
    SUBCASE("bad n throws") {
        CHECK_THROWS_AS(ln_family(0), Error);
        CHECK_THROWS_AS(ln_family(27), Error);
    }
}

TEST_CASE("normalize_probability") {
    const PraC l2 = fix_l2_by_hand();

    SUBCASE("interval (3/4, 1) becomes probability 4/7") {
        const PraC n = normalize_probability(l2, rat("3/4"), rat("1"));
        REQUIRE(validate(n).ok());
        // Acceptance rescales by 4/7 with a rejecting sink.
        for (const Word& w : words_up_to("ab", 5))
            CHECK(accept_prob_c(n, w) == rat("4/7") * accept_prob_c(l2, w));
        const auto iv = recognition_interval(n, minimal_dfa_from_regex("a*b*"), 6);
        CHECK(iv.p1 == rat("3/7"));
        CHECK(iv.p2 == rat("4/7"));
    }
    SUBCASE("(0, 1) degenerates to the original behavior plus an inert sink") {
        const PraC n = normalize_probability(l2, rat("0"), rat("1"));
        REQUIRE(validate(n).ok());
        CHECK(n.order() == 4);
        for (const Word& w : words_up_to("ab", 4))
            CHECK(accept_prob_c(n, w) == accept_prob_c(l2, w));
    }
    SUBCASE("p1 + p2 < 1 takes the accepting-sink branch") {
        const PraC n = normalize_probability(l2, rat("0"), rat("1/2"));
        REQUIRE(validate(n).ok());
        // P'(w) = P(w)/(2-p1-p2) + (1-p1-p2)/(2-p1-p2).
        for (const Word& w : words_up_to("ab", 4))
            CHECK(accept_prob_c(n, w) == rat("2/3") * accept_prob_c(l2, w) + rat("1/3"));
    }
    SUBCASE("p1 >= p2 throws") {
        CHECK_THROWS_AS(normalize_probability(l2, rat("1/2"), rat("1/2")), Error);
    }
}

TEST_CASE("boost") {
    const PraC l2 = fix_l2_by_hand();

    SUBCASE("one copy changes nothing") {
        const PraC b1 = boost(l2, BoostPlan::from_interval(1, rat("3/4"), rat("1")));
        for (const Word& w : words_up_to("ab", 5))
            CHECK(accept_prob_c(b1, w) == accept_prob_c(l2, w));
    }
    SUBCASE("acceptance equals the exact binomial tail") {
        for (int copies : {1, 2, 3}) {
            const auto plan = BoostPlan::from_interval(copies, rat("3/4"), rat("1"));
            const PraC boosted = boost(l2, plan);
            REQUIRE(validate(boosted).ok());
            const Rational bar = Rational(copies) * plan.threshold;
            for (const Word& w : words_up_to("ab", 5)) {
                const Rational p = accept_prob_c(l2, w);
                CAPTURE(copies);
                CAPTURE(w);
                CHECK(accept_prob_c(boosted, w) == binomial_tail_gt(copies, p, bar));
            }
        }
    }
    SUBCASE("the frozen spot check: three copies on ba") {
        const PraC b3 = boost(l2, BoostPlan::from_interval(3, rat("3/4"), rat("1")));
        CHECK(accept_prob_c(b3, "ba") == rat("27/64"));
        CHECK(accept_prob_c(b3, "ab") == rat("1"));  // members stay at probability 1
    }
    SUBCASE("state budget guards the blowup") {
        CHECK_THROWS_AS(boost(l2, BoostPlan::from_interval(9, rat("3/4"), rat("1"))), Error);
    }
}

TEST_CASE("copies_needed") {
    CHECK(copies_needed(rat("3/4"), rat("1"), rat("1/10")) == 641);
    CHECK(copies_needed(rat("1/2"), rat("1"), rat("1/10")) == 161);  // doubled gap, ~1/4 the copies
    SUBCASE("monotone in epsilon") {
        const long at_quarter = copies_needed(rat("3/4"), rat("1"), rat("1/4"));
        const long at_half = copies_needed(rat("3/4"), rat("1"), rat("1/2"));
        CHECK(at_half <= at_quarter);
        CHECK(at_quarter <= 2 * at_half + 1);
    }
    CHECK_THROWS_AS(copies_needed(rat("3/4"), rat("1"), rat("0")), Error);
    CHECK_THROWS_AS(copies_needed(rat("1"), rat("3/4"), rat("1/10")), Error);
}

TEST_CASE("boolean_combine") {
    const PraC l2 = fix_l2_by_hand();
    // Source automaton above probability 2/3: boost to (27/64, 1), then
    // normalize to probability 64/91.
    const PraC boosted = boost(l2, BoostPlan::from_interval(3, rat("3/4"), rat("1")));
    const PraC n = normalize_probability(boosted, rat("27/64"), rat("1"));

    SUBCASE("combining an automaton with itself keeps acceptance unchanged") {
        const PraC c = boolean_combine(n, n, BoolOp::Union);
        REQUIRE(validate(c).ok());
        for (const Word& w : words_up_to("ab", 4))
            CHECK(accept_prob_c(c, w) == accept_prob_c(n, w));
    }
    SUBCASE("intersection interval sits inside the mixture bounds") {
        const PraC c = boolean_combine(n, n, BoolOp::Intersection);
        const auto iv = recognition_interval(c, minimal_dfa_from_regex("a*b*"), 5);
        const Rational p = rat("64/91");  // both inputs recognize with this probability
        CHECK(iv.p2 >= p);                     // members at (p1+p2)/2 = p
        CHECK(iv.p1 <= rat("1") - p / rat("2"));  // non-members at most 1 - p/2
        CHECK(iv.p1 < iv.p2);
    }
    SUBCASE("union of the normalized automaton with itself still separates a*b*") {
        const PraC norm = normalize_probability(l2, rat("3/4"), rat("1"));
        const PraC u = boolean_combine(norm, norm, BoolOp::Union);
        REQUIRE(validate(u).ok());
        const auto iv = recognition_interval(u, minimal_dfa_from_regex("a*b*"), 5);
        CHECK(iv.p1 < iv.p2);
    }
    SUBCASE("alphabet mismatch throws") {
        CHECK_THROWS_AS(boolean_combine(n, ln_family(3), BoolOp::Union), Error);
    }
}

TEST_CASE("complement") {
    const PraC l2 = fix_l2_by_hand();
    const PraC c = complement(l2);
    CHECK(accept_prob_c(c, "ba") == rat("1/4"));
    CHECK(accept_prob_c(c, "ab") == rat("0"));

    SUBCASE("acceptance flips exactly") {
        for (const Word& w : words_up_to("ab", 5))
            CHECK(accept_prob_c(c, w) == rat("1") - accept_prob_c(l2, w));
    }
    SUBCASE("involution") {
        const PraC back = complement(complement(l2));
        CHECK(back.accepting == l2.accepting);
    }
    SUBCASE("complement interval swaps roles") {
        const auto iv = recognition_interval(
            c, [](const Word& w) { return !in_astar_bstar(w); }, 6);
        CHECK(iv.p1 == rat("0"));
        CHECK(iv.p2 == rat("1/4"));
    }
}

TEST_CASE("inverse_hom") {
    const PraC l2 = fix_l2_by_hand();

    SUBCASE("identity homomorphism changes nothing") {
        const HomomorphismSpec id{"ab", "ab", {{'a', "a"}, {'b', "b"}}};
        const PraC h = inverse_hom(l2, id);
        for (char c : h.working_symbols()) CHECK(h.matrix(c) == l2.matrix(c));
    }
    SUBCASE("collapsing b onto a accepts everything") {
        const HomomorphismSpec collapse{"ab", "ab", {{'a', "a"}, {'b', "a"}}};
        const PraC h = inverse_hom(l2, collapse);
        for (const Word& w : words_up_to("ab", 5)) CHECK(accept_prob_c(h, w) == rat("1"));
    }
    SUBCASE("image products multiply right to left") {
        const HomomorphismSpec two{"c", "ab", {{'c', "ab"}}};
        const PraC h = inverse_hom(l2, two);
        CHECK(h.matrix('c') == matmul(l2.matrix('b'), l2.matrix('a')));
    }
    SUBCASE("acceptance factors through the homomorphism exactly") {
        const HomomorphismSpec hmap{"ab", "ab", {{'a', "ab"}, {'b', "ba"}}};
        const PraC h = inverse_hom(l2, hmap);
        REQUIRE(validate(h).ok());
        for (const Word& w : words_up_to("ab", 4)) {
            Word image;
            for (char c : w) image += hmap.images.at(c);
            CHECK(accept_prob_c(h, w) == accept_prob_c(l2, image));
        }
    }
    SUBCASE("malformed specs are rejected") {
        CHECK_THROWS_AS(inverse_hom(l2, HomomorphismSpec{"ab", "ab", {{'a', "a"}}}), Error);
        CHECK_THROWS_AS(inverse_hom(l2, HomomorphismSpec{"a", "ab", {{'a', "x"}}}), Error);
    }
}

TEST_CASE("left_quotient") {
    const PraC l2 = fix_l2_by_hand();
    CHECK(accept_prob_c(left_quotient(l2, "b"), "a") == rat("3/4"));
    CHECK(accept_prob_c(left_quotient(l2, "a"), "b") == rat("1"));

    SUBCASE("empty quotient word changes nothing") {
        const PraC q = left_quotient(l2, "");
        for (const Word& w : words_up_to("ab", 4))
            CHECK(accept_prob_c(q, w) == accept_prob_c(l2, w));
    }
    SUBCASE("quotient acceptance equals acceptance of the prefixed word") {
        for (const Word& u : {Word("b"), Word("ab"), Word("bb")}) {
            const PraC q = left_quotient(l2, u);
            REQUIRE(validate(q).ok());
            for (const Word& w : words_up_to("ab", 4))
                CHECK(accept_prob_c(q, w) == accept_prob_c(l2, u + w));
        }
    }
    SUBCASE("unknown symbols in u throw") {
        CHECK_THROWS_AS(left_quotient(l2, "x"), Error);
    }
}

TEST_CASE("strip_dollar") {
    SUBCASE("identity '$' leaves the language untouched") {
        const PraC l2 = fix_l2_by_hand();
        const PraC d = strip_dollar(l2, 5);
        REQUIRE(validate(d).ok());
        CHECK(d.endmarkers == EndmarkerMode::HashOnly);
        CHECK(d.order() == 15);
        for (const Word& w : words_up_to("ab", 5))
            CHECK(accept_prob_c(d, w) == accept_prob_c(l2, w));
    }
    SUBCASE("fractional p(q_i) still separates with m=5") {
        const PraC a = l2_with_mixing_dollar();
        REQUIRE(validate(a).ok());
        const Dfa lang = minimal_dfa_from_regex("a*b*");
        const auto src = recognition_interval(a, lang, 6);
        CHECK(src.p1 == rat("3/4"));
        CHECK(src.p2 == rat("7/8"));

        const PraC d = strip_dollar(a, 5);
        REQUIRE(validate(d).ok());
        const auto iv = recognition_interval(d, lang, 6);
        CHECK(iv.p1 < iv.p2);            // still separates
        CHECK(iv.p2 >= src.p2);          // members only gain
        CHECK(iv.p1 < src.p1 + rat("1/5"));  // non-members gain less than 1/m
        CHECK(iv.p1 == rat("4/5"));
        CHECK(iv.p2 == rat("9/10"));
    }
    SUBCASE("m = 1 merely drops an identity '$'") {
        const PraC l2 = fix_l2_by_hand();
        const PraC d = strip_dollar(l2, 1);
        CHECK(d.order() == 3);
        for (const Word& w : words_up_to("ab", 4))
            CHECK(accept_prob_c(d, w) == accept_prob_c(l2, w));
    }
    CHECK_THROWS_AS(strip_dollar(fix_l2_by_hand(), 0), Error);
}

TEST_CASE("dirichlet_copies") {
    SUBCASE("exact at the common denominator") {
        const auto dc = dirichlet_copies({rat("1/2"), rat("1/2")}, rat("1/4"));
        CHECK(dc.n == 2);
        CHECK(dc.g == std::vector<long>{1, 1});
    }
    SUBCASE("scan up to the denominator") {
        const auto dc = dirichlet_copies({rat("1/3"), rat("2/3")}, rat("1/10"));
        CHECK(dc.n == 3);
        CHECK(dc.g == std::vector<long>{1, 2});
    }
    SUBCASE("a loose phi can stop before the common denominator") {
        const auto dc = dirichlet_copies({rat("2/5"), rat("3/5")}, rat("1/3"));
        CHECK(dc.n == 2);
        CHECK(dc.g == std::vector<long>{1, 1});
    }
    SUBCASE("copy counts always sum to n") {
        const auto dc = dirichlet_copies({rat("4/7"), rat("3/7")}, rat("1/16"));
        CHECK(dc.n == 7);
        CHECK(dc.g == std::vector<long>{4, 3});
    }
    CHECK_THROWS_AS(dirichlet_copies({rat("1/2"), rat("1/2")}, rat("1/2")), Error);
    CHECK_THROWS_AS(dirichlet_copies({rat("1/2"), rat("1/3")}, rat("1/4")), Error);
}

TEST_CASE("strip_hash") {
    const PraC l2 = fix_l2_by_hand();
    const PraC l2_hash = strip_dollar(l2, 1);  // hash-only, 3 states

    SUBCASE("single branch with identity '#' just drops the marker") {
        const PraC s = strip_hash(l2_hash, rat("3/4"), rat("1"), rat("1/10"), 1);
        REQUIRE(validate(s).ok());
        CHECK(s.endmarkers == EndmarkerMode::None);
        for (const Word& w : words_up_to("ab", 5))
            CHECK(accept_prob_c(s, w) == accept_prob_c(l2, w));
    }
    SUBCASE("the two-branch normalized automaton separates after stripping") {
        const PraC n = normalize_probability(l2_hash, rat("3/4"), rat("1"));
        const PraC s = strip_hash(n, rat("3/7"), rat("4/7"), rat("1/8"), 7);
        REQUIRE(validate(s).ok());
        CHECK(s.order() == 81);  // 3^4 live coordinates, dead branches are single states
        const auto iv = recognition_interval(s, minimal_dfa_from_regex("a*b*"), 5);
        CHECK(iv.p1 == rat("81/256"));
        CHECK(iv.p2 == rat("1"));
    }
    SUBCASE("n_copies must be a multiple of the Dirichlet n") {
        const PraC n = normalize_probability(l2_hash, rat("3/4"), rat("1"));
        CHECK_THROWS_AS(strip_hash(n, rat("3/7"), rat("4/7"), rat("1/8"), 3), Error);
    }
    SUBCASE("epsilon outside its bracket throws") {
        CHECK_THROWS_AS(strip_hash(l2_hash, rat("3/4"), rat("1"), rat("1/2"), 1), Error);
    }
    SUBCASE("state budget guards the tensor blowup") {
        const PraC n = normalize_probability(l2_hash, rat("3/4"), rat("1"));
        CHECK_THROWS_AS(strip_hash(n, rat("3/7"), rat("4/7"), rat("1/8"), 7, 64), Error);
    }
    SUBCASE("'$' automata are refused") {
        CHECK_THROWS_AS(strip_hash(l2, rat("3/4"), rat("1"), rat("1/10"), 1), Error);
    }
}

TEST_CASE("every construction output validates on randomized inputs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PraC a;
        a.states = {"s0", "s1", "s2"};
        a.alphabet = "ab";
        a.initial = 0;
        a.accepting = {true, false, false};
        a.endmarkers = EndmarkerMode::Both;
        a.transitions.emplace('a', random_doubly_stochastic(3, 2, seed));
        a.transitions.emplace('b', random_doubly_stochastic(3, 3, seed + 100));
        a.transitions.emplace('#', random_doubly_stochastic(3, 2, seed + 200));
        a.transitions.emplace('$', random_doubly_stochastic(3, 2, seed + 300));
        REQUIRE(validate(a).ok());

        CHECK(validate(complement(a)).ok());
        CHECK(validate(reverse_transitions(a)).ok());
        CHECK(validate(left_quotient(a, "ab")).ok());
        CHECK(validate(normalize_probability(a, rat("1/3"), rat("2/3"))).ok());
        CHECK(validate(boost(a, BoostPlan::from_interval(2, rat("1/3"), rat("2/3")))).ok());
        CHECK(validate(boolean_combine(a, a, BoolOp::Union)).ok());
        CHECK(validate(strip_dollar(a, 3)).ok());
        const HomomorphismSpec h{"xy", "ab", {{'x', "ab"}, {'y', "b"}}};
        CHECK(validate(inverse_hom(a, h)).ok());
    }
}
