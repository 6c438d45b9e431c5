#include <doctest.h>

#include <cstdlib>
#include <random>

#include "bankledger/regulation.hpp"
#include "fixtures.hpp"

using namespace bankledger;
using namespace bankledger::test;

TEST_CASE("ratio parsing") {
    Ratio r = Ratio::parse("2/100");
    CHECK(r.num == 2);
    CHECK(r.den == 100);
    Ratio one = Ratio::parse("1");
    CHECK(one.num == 1);
    CHECK(one.den == 1);
    CHECK_THROWS_AS(Ratio::parse("2/0"), std::invalid_argument);
    CHECK_THROWS_AS(Ratio::parse("x/100"), std::invalid_argument);
    CHECK_THROWS_AS(Ratio::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Ratio::parse("-1/100"), std::invalid_argument);
}

TEST_CASE("rounding is half-up") {
    Ratio r{2, 100};
    CHECK(r.mul_round_half_up(10000) == 200);
    CHECK(r.mul_round_half_up(10500) == 210);
    CHECK(r.mul_round_half_up(0) == 0);
    CHECK(r.mul_round_half_up(25) == 1);  // 0.5 rounds up
    CHECK(r.mul_round_half_up(24) == 0);  // 0.48 rounds down
    CHECK(r.mul_round_half_up(26) == 1);
    Ratio third{1, 3};
    CHECK(third.mul_round_half_up(10) == 3);
    CHECK(third.mul_round_half_up(11) == 4);
}

TEST_CASE("required reserve against the opening deposits") {
    RegulatoryParams params;
    CHECK(required_reserve(params, 10000) == 200);
    CHECK(required_reserve(params, 10500) == 210);
    CHECK(required_reserve(params, 0) == 0);
}

TEST_CASE("risk weighted assets net the provision off loans") {
    auto sys = make_initial_system();
    Bank& a = sys->bank("A");
    CHECK(risk_weighted_assets(a, sys->params()) == 10000);
    a.pay_loan_interest("A.book", "A.C1", 60);
    a.provision_for_loss(50);
    CHECK(risk_weighted_assets(a, sys->params()) == 9950);
}

TEST_CASE("capital report and lending headroom") {
    auto sys = make_initial_system();
    ComplianceReport rep = check_capital_requirement(sys->bank("A"), sys->params());
    CHECK(rep.capital == 1000);
    CHECK(rep.risk_weighted_assets == 10000);
    CHECK(rep.capital_ok);
    // 1000 / (8/100) = 12500 supportable, 10000 booked.
    CHECK(rep.max_new_lending == 2500);
}

TEST_CASE("capital boundary is inclusive, checked exactly") {
    Ratio c{8, 100};
    CHECK(capital_satisfied(1000, 12500, c));
    CHECK_FALSE(capital_satisfied(1000, 12501, c));
    CHECK(capital_satisfied(0, 0, c));
    CHECK_FALSE(capital_satisfied(0, 1, c));
}

TEST_CASE("reserve check against the live system") {
    auto sys = make_initial_system();
    ComplianceReport rep = check_reserve_requirement(sys->bank("A"));
    CHECK(rep.required_reserves == 200);
    CHECK(rep.actual_reserves == 200);
    CHECK(rep.reserve_ok);

    sys->bank("A").lend_own_customer("A.C1", 500, "L1");
    rep = check_reserve_requirement(sys->bank("A"));
    CHECK(rep.required_reserves == 210);
    CHECK(rep.actual_reserves == 210);
    CHECK(rep.reserve_ok);
}

TEST_CASE("money supply counts customer deposits only") {
    auto sys = make_initial_system();
    CHECK(money_supply(*sys) == 20000);
    sys->bank("A").lend_own_customer("A.C1", 500, "L1");
    CHECK(money_supply(*sys) == 20500);
    sys->bank("A").repay_principal("L1", "A.C1", 40);
    CHECK(money_supply(*sys) == 20460);
    sys->interbank_loan("A", "B", 100, "L2");
    CHECK(money_supply(*sys) == 20460);
}

TEST_CASE("required reserve is monotone and near-homogeneous") {
    RegulatoryParams params;
    std::mt19937 rng(31);
    for (int i = 0; i < 300; ++i) {
        Money d = Money(rng() % 100000);
        Money d2 = d + 1 + Money(rng() % 1000);
        CHECK(required_reserve(params, d) <= required_reserve(params, d2));
        Money k = 1 + Money(rng() % 20);
        Money scaled = required_reserve(params, k * d);
        Money linear = k * required_reserve(params, d);
        // Rounding once versus k times differs by at most (k + 1) / 2.
        CHECK(std::abs(scaled - linear) * 2 <= k + 1);
    }
}
