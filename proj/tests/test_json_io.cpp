#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include "dsa/json_io.hpp"

using namespace dsa;
using namespace dsa::testutil;

TEST_CASE("matrix round trip") {
    const StochMatrix m = random_doubly_stochastic(4, 3, 7);
    const StochMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back == m);
    CHECK(back.kind() == m.kind());

    SUBCASE("integer shorthand is accepted") {
        const auto j = Json::parse(R"({"n":2,"entries":[["1",0],[0,"1"]]})");
        CHECK(matrix_from_json(j).is_permutation());
    }
    SUBCASE("inconsistent n is rejected") {
        const auto j = Json::parse(R"({"n":3,"entries":[["1","0"],["0","1"]]})");
        CHECK_THROWS_AS(matrix_from_json(j), Error);
    }
    SUBCASE("ragged grids are rejected") {
        const auto j = Json::parse(R"({"n":2,"entries":[["1","0"],["0"]]})");
        CHECK_THROWS_AS(matrix_from_json(j), Error);
    }
}

TEST_CASE("prac round trip") {
    const PraC a = fix_l2_by_hand();
    const Json j = prac_to_json(a);
    CHECK(j.at("type") == "prac");
    const PraC back = prac_from_json(j);
    CHECK(back.states == a.states);
    CHECK(back.alphabet == a.alphabet);
    CHECK(back.initial == a.initial);
    CHECK(back.accepting == a.accepting);
    CHECK(back.endmarkers == a.endmarkers);
    for (char c : a.working_symbols()) CHECK(back.matrix(c) == a.matrix(c));

    SUBCASE("bare grids are accepted in transitions") {
        Json bare = j;
        bare["transitions"]["a"] = Json::parse(R"([["1","0","0"],["0","1/2","1/2"],["0","1/2","1/2"]])");
        CHECK(prac_from_json(bare).matrix('a') == a.matrix('a'));
    }
    SUBCASE("unknown initial state is rejected") {
        Json bad = j;
        bad["initial"] = "nope";
        CHECK_THROWS_AS(prac_from_json(bad), Error);
    }
    SUBCASE("bad endmarkers string is rejected") {
        Json bad = j;
        bad["endmarkers"] = "left";
        CHECK_THROWS_AS(prac_from_json(bad), Error);
    }
}

TEST_CASE("pradh round trip keeps the partition") {
    const PraDh a = fix_adh();
    const PraDh back = pradh_from_json(pradh_to_json(a));
    CHECK(back.accepting == a.accepting);
    CHECK(back.rejecting == a.rejecting);
    CHECK(validate(back).ok());
}

TEST_CASE("pra15 round trip") {
    const Pra15 a = fix_15();
    const Json j = pra15_to_json(a);
    CHECK(j.at("flavor") == "weak");
    const Pra15 back = pra15_from_json(j);
    CHECK(back.states == a.states);
    for (char c : a.working_symbols()) {
        CHECK(back.grids(c).stay == a.grids(c).stay);
        CHECK(back.grids(c).advance == a.grids(c).advance);
    }
    CHECK(validate_pra15(back).ok());
}

TEST_CASE("automaton dispatch on the type field") {
    CHECK(std::holds_alternative<PraC>(automaton_from_json(prac_to_json(fix_l2_by_hand()))));
    CHECK(std::holds_alternative<PraDh>(automaton_from_json(pradh_to_json(fix_adh()))));
    CHECK(std::holds_alternative<Pra15>(automaton_from_json(pra15_to_json(fix_15()))));
    CHECK_THROWS_AS(automaton_from_json(Json::parse(R"({"type":"mystery"})")), Error);
}

TEST_CASE("dfa round trip") {
    const Dfa d = minimal_dfa_from_regex("(a|b)*abb");
    const Dfa back = dfa_from_json(dfa_to_json(d));
    for (const Word& w : words_up_to("ab", 6)) CHECK(back.accepts(w) == d.accepts(w));
}

TEST_CASE("complex matrix round trip") {
    ComplexMatrix m(2, 2);
    m << std::complex<double>(0.5, -0.25), std::complex<double>(0, 1),
        std::complex<double>(1, 0), std::complex<double>(-0.125, 0.75);
    const ComplexMatrix back = complex_from_json(complex_to_json(m));
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("homomorphism spec") {
    const HomomorphismSpec h{"ab", "xy", {{'a', "xy"}, {'b', ""}}};
    const HomomorphismSpec back = homomorphism_from_json(homomorphism_to_json(h));
    CHECK(back.images.at('a') == "xy");
    CHECK(back.images.at('b').empty());

    SUBCASE("image outside the target alphabet is rejected") {
        const auto j = Json::parse(R"({"source":["a"],"target":["x"],"map":{"a":"z"}})");
        CHECK_THROWS_AS(homomorphism_from_json(j), Error);
    }
    SUBCASE("multi-character symbols are rejected") {
        const auto j = Json::parse(R"({"source":["ab"],"target":["x"],"map":{"ab":"x"}})");
        CHECK_THROWS_AS(homomorphism_from_json(j), Error);
    }
}
