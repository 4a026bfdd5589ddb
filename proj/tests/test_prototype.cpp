#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include "dsa/prototype.hpp"

#include <cmath>

using namespace dsa;
using namespace dsa::testutil;

namespace {

const RatMatrix kCounterexample = mat({{"1/2", "1/2", "0"},
                                       {"1/2", "0", "1/2"},
                                       {"0", "1/2", "1/2"}});

}  // namespace

TEST_CASE("is_prototype") {
    const StochMatrix id2 = StochMatrix::identity(2);
    CHECK(is_prototype(ComplexMatrix::Identity(2, 2), id2));

    SUBCASE("the real Hadamard matrix covers the uniform matrix") {
        const double s = 1.0 / std::sqrt(2.0);
        ComplexMatrix h(2, 2);
        h << s, s, s, -s;
        CHECK(is_prototype(h, StochMatrix(mat({{"1/2", "1/2"}, {"1/2", "1/2"}}))));
    }
    SUBCASE("modulus mismatch fails") {
        CHECK_FALSE(is_prototype(ComplexMatrix::Identity(2, 2),
                                 StochMatrix(mat({{"1/2", "1/2"}, {"1/2", "1/2"}}))));
    }
    SUBCASE("non-unitary fails even with matching moduli") {
        ComplexMatrix ones(2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        ones << s, s, s, s;
        CHECK_FALSE(is_prototype(ones, StochMatrix(mat({{"1/2", "1/2"}, {"1/2", "1/2"}}))));
    }
    SUBCASE("order mismatch throws") {
        CHECK_THROWS_AS(is_prototype(ComplexMatrix::Identity(3, 3), id2), Error);
    }
}

TEST_CASE("unistochastic_3x3") {
    SUBCASE("the chained counterexample has no prototype") {
        CHECK_FALSE(unistochastic_3x3(StochMatrix(kCounterexample)).yes);
    }
    SUBCASE("identity says yes with the identity certificate") {
        const auto v = unistochastic_3x3(StochMatrix::identity(3));
        REQUIRE(v.yes);
        CHECK((v.prototype - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    }
    SUBCASE("the uniform matrix gets a Fourier-type certificate") {
        RatMatrix third(3, 3);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j) third(i, j) = rat("1/3");
        const StochMatrix s(std::move(third));
        const auto v = unistochastic_3x3(s);
        REQUIRE(v.yes);
        CHECK(is_prototype(v.prototype, s, 1e-9));
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j)
                CHECK(std::abs(v.prototype(i, j)) == doctest::Approx(1.0 / std::sqrt(3.0)));
    }
    SUBCASE("permutation matrices are their own prototypes") {
        const auto v = unistochastic_3x3(StochMatrix(mat({{"0", "1", "0"},
                                                          {"0", "0", "1"},
                                                          {"1", "0", "0"}})));
        REQUIRE(v.yes);
        CHECK(is_prototype(v.prototype, StochMatrix(mat({{"0", "1", "0"},
                                                         {"0", "0", "1"},
                                                         {"1", "0", "0"}})),
                           1e-9));
    }
    SUBCASE("certificates pass is_prototype whenever the verdict is yes") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto s = random_doubly_stochastic(3, 3, seed);
            const auto v = unistochastic_3x3(s);
            if (v.yes) CHECK(is_prototype(v.prototype, s, 1e-8));
        }
    }
    SUBCASE("wrong order or kind throws") {
        CHECK_THROWS_AS(unistochastic_3x3(StochMatrix::identity(2)), Error);
        CHECK_THROWS_AS(unistochastic_3x3(StochMatrix(mat({{"1", "1", "0"},
                                                           {"0", "0", "1"},
                                                           {"0", "0", "0"}}))),
                        Error);
    }
}

TEST_CASE("search_prototype") {
    SUBCASE("every symmetric 2x2 doubly stochastic matrix is covered") {
        for (const char* p : {"0", "1/5", "1/3", "1/2", "9/10", "1"}) {
            const Rational pr = rat(p);
            RatMatrix m(2, 2);
            m << pr, rat("1") - pr, rat("1") - pr, pr;
            const StochMatrix s(std::move(m));
            const auto found = search_prototype(s, 10, 1);
            CAPTURE(p);
            REQUIRE(found.has_value());
            CHECK(is_prototype(*found, s, 1e-8));
        }
    }
    SUBCASE("permutation matrices come back as themselves") {
        const StochMatrix s(mat({{"0", "1"}, {"1", "0"}}));
        const auto found = search_prototype(s, 5, 3);
        REQUIRE(found.has_value());
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 2; ++j)
                CHECK(std::abs((*found)(i, j) - std::complex<double>(s(i, j).to_double(), 0)) <
                      1e-12);
    }
    SUBCASE("the 3x3 counterexample stays out of reach") {
        CHECK_FALSE(search_prototype(StochMatrix(kCounterexample), 200, 9).has_value());
    }
    SUBCASE("search never contradicts the 3x3 decision") {
        for (std::uint64_t seed = 100; seed < 120; ++seed) {
            const auto s = random_doubly_stochastic(3, 2, seed);
            const auto verdict = unistochastic_3x3(s);
            const auto found = search_prototype(s, 30, seed);
            if (!verdict.yes) CHECK_FALSE(found.has_value());
            if (found) CHECK(is_prototype(*found, s, 1e-8));
        }
    }
    SUBCASE("a 4x4 Birkhoff mixture of two permutations is found") {
        // Convex combinations of a permutation and the identity have 2x2
        // circulant blocks, so a prototype exists and the search finds it.
        const auto s = random_doubly_stochastic(4, 1, 17);  // a permutation
        const auto found = search_prototype(s, 10, 2);
        REQUIRE(found.has_value());
        CHECK(is_prototype(*found, s, 1e-8));
    }
}
