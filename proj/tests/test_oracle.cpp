#include <doctest.h>

#include <stdexcept>

#include "synccode/oracle.hpp"
#include "synccode/verifier.hpp"

using namespace synccode;

TEST_CASE("oracle decides small instances") {
    const auto sat = oracle_exists(Params(2, 3, 5));
    REQUIRE(sat.sat());
    CHECK(sat.code->data_bits() == 2);
    CHECK(sat.code->control_bits() == 3);
    CHECK(is_sync_code(*sat.code, 5));
    // deterministic enumeration order: first hit is frozen
    CHECK(sat.code->str() == "001__");

    CHECK(oracle_exists(Params(2, 2, 5)).unsat());
    // with lemma1_bound(3,3) = 5 this exhausts every k, proving nonexistence
    CHECK(oracle_exists(Params(3, 5, 3)).unsat());
}

TEST_CASE("oracle min-k sweep") {
    const auto r = oracle_min_k(2, 4);
    REQUIRE(r.finite());
    CHECK(r.k == 6);
    CHECK(is_sync_code(*r.code, 4));

    CHECK(oracle_min_k(2, 2).infinite());
    CHECK(oracle_min_k(3, 3).infinite());

    const auto r36 = oracle_min_k(3, 6);
    REQUIRE(r36.finite());
    CHECK(r36.k == 6);
}

TEST_CASE("oracle handles windows longer than the code during sweeps") {
    // n = 6 exceeds d + k for k < 4; those instances are decided at the
    // full-length window. Expected minimum is 3.
    const auto r = oracle_min_k(2, 6);
    REQUIRE(r.finite());
    CHECK(r.k == 3);
}

TEST_CASE("oracle budget") {
    CHECK_THROWS_AS(oracle_exists(Params(8, 10, 9), OracleBudget{14, 1000000}),
                    std::invalid_argument);  // length over cap

    OracleBudget tiny;
    tiny.max_enumerations = 10;
    const auto r = oracle_exists(Params(3, 4, 5), tiny);
    CHECK(r.timeout());

    OracleBudget sweep_budget;
    sweep_budget.max_length = 6;
    const auto mk = oracle_min_k(3, 5, sweep_budget);  // answer is 12, beyond the cap
    REQUIRE(mk.unknown());
    CHECK(mk.last_k_decided == 3);
}

TEST_CASE("oracle results are reproducible") {
    const auto a = oracle_exists(Params(3, 4, 6));
    const auto b = oracle_exists(Params(3, 4, 6));
    REQUIRE(a.sat());
    REQUIRE(b.sat());
    CHECK(a.code->str() == b.code->str());
    CHECK(a.stats.nodes == b.stats.nodes);
}
