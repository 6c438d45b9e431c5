// Acceptance suite: six checks, one PASS/FAIL line each. Exits nonzero if any
// check fails.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bankledger/regulation.hpp"
#include "bankledger/scenario.hpp"
#include "fixtures.hpp"
#include "stream_gen.hpp"

using namespace bankledger;
using namespace bankledger::test;

namespace {

int failures = 0;

void report(const std::string& name, const std::string& errors) {
    if (errors.empty()) {
        std::cout << "PASS " << name << "\n";
    } else {
        ++failures;
        std::cout << "FAIL " << name << "\n" << errors;
    }
}

const std::vector<std::string> kScenarios = {
    "initial_position", "intra_transfer",  "transfer_step1", "interbank_transfer",
    "own_customer_loan", "crossbank_step1", "crossbank_loan", "interbank_loan",
    "loan_lifecycle",    "stock_sale",      "cb_borrow",      "cb_interest",
};

// 1. Every snapshot emitted by the reference scenarios matches its golden
//    file byte for byte.
void check_golden_snapshots() {
    std::ostringstream errors;
    for (const auto& name : kScenarios) {
        try {
            Scenario sc =
                parse_scenario(read_file(std::string(SCENARIO_DIR) + "/" + name + ".scn"));
            run_scenario(sc, [&](const std::string& snap, const std::string& body) {
                std::string golden_path = std::string(SCENARIO_DIR) + "/golden/" + name +
                                          "." + snap + ".snap";
                std::string golden = read_file(golden_path);
                if (golden != body) {
                    errors << name << "." << snap << " differs:\n"
                           << diff_snapshot(golden, body);
                }
            });
        } catch (const std::exception& e) {
            errors << name << ": " << e.what() << "\n";
        }
    }
    report("golden scenario snapshots reproduced byte-exactly", errors.str());
}

// 2. Accounting identities (per-entity balance, trial balance, reserve
//    mirror, loan book) hold after every instruction of the reference
//    scenarios and across a long randomized operation stream.
void check_identities() {
    std::ostringstream errors;
    for (const auto& name : kScenarios) {
        try {
            Scenario sc =
                parse_scenario(read_file(std::string(SCENARIO_DIR) + "/" + name + ".scn"));
            run_scenario(sc, nullptr,
                         [&](const ClearingSystem& sys, const Instruction& ins) {
                             std::string broken = check_invariants(sys);
                             if (!broken.empty())
                                 errors << name << " line " << ins.line << ": " << broken;
                         });
        } catch (const std::exception& e) {
            errors << name << ": " << e.what() << "\n";
        }
    }

    auto sys = make_three_bank_system();
    StreamGenerator gen(*sys, 20260823);
    for (int i = 0; i < 1000 && errors.str().size() < 4000; ++i) {
        OpOutcome op = gen.step();
        std::string broken = check_invariants(*sys);
        if (!broken.empty())
            errors << "random step " << i << " (" << op.kind << " " << op.amount
                   << "): " << broken;
    }
    report("accounting identities hold after every operation", errors.str());
}

// 3. The money supply (sum of customer deposits) moves only by the documented
//    per-operation deltas.
void check_money_supply_law() {
    std::ostringstream errors;
    auto sys = make_three_bank_system();
    StreamGenerator gen(*sys, 907);
    Money supply = money_supply(*sys);
    for (int i = 0; i < 1000 && errors.str().size() < 4000; ++i) {
        OpOutcome op = gen.step();
        Money now = money_supply(*sys);
        Money expected = supply + (op.accepted ? op.expected_money_delta : 0);
        if (now != expected)
            errors << "step " << i << " (" << op.kind << " " << op.amount
                   << (op.accepted ? ", accepted" : ", rejected") << "): supply " << now
                   << " expected " << expected << "\n";
        supply = now;
    }
    report("money supply follows the per-operation law", errors.str());
}

// 4. Provisioning followed by a write-off of the provisioned amount leaves
//    net assets, the money supply, and lending headroom unchanged by the
//    write-off itself.
void check_write_off_neutrality() {
    std::ostringstream errors;
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto sys = make_three_bank_system();
        Bank& bank = sys->bank("A");
        Money k = 1 + Money(rng() % 400);
        bank.pay_loan_interest("A.book", "A.C1", k);
        bank.provision_for_loss(k);

        Money assets = sys->ledger().balance_sheet("A").total_assets;
        Money supply = money_supply(*sys);
        Money headroom = check_capital_requirement(bank, sys->params()).max_new_lending;

        Money w = 1 + Money(rng() % k);
        bank.write_off_loan("A.book", w);

        if (sys->ledger().balance_sheet("A").total_assets != assets)
            errors << "trial " << trial << ": net assets moved on write-off\n";
        if (money_supply(*sys) != supply)
            errors << "trial " << trial << ": money supply moved on write-off\n";
        Money headroom_after =
            check_capital_requirement(bank, sys->params()).max_new_lending;
        if (headroom_after != headroom)
            errors << "trial " << trial << ": headroom " << headroom << " -> "
                   << headroom_after << " on write-off\n";
        std::string broken = check_invariants(*sys);
        if (!broken.empty()) errors << "trial " << trial << ": " << broken;
    }
    report("loan write-off is neutral for net assets, money and headroom",
           errors.str());
}

// 5. Rejected operations leave no trace, the entry log replays to the live
//    state, and identical runs produce byte-identical snapshots.
void check_determinism_and_atomicity() {
    std::ostringstream errors;

    auto run_stream = [](std::uint32_t seed, std::ostringstream* errs) {
        auto sys = make_three_bank_system();
        StreamGenerator gen(*sys, seed);
        for (int i = 0; i < 600; ++i) {
            std::string before;
            if (errs) before = render_snapshot(*sys);
            OpOutcome op = gen.step();
            if (errs && !op.accepted && render_snapshot(*sys) != before)
                *errs << "step " << i << " (" << op.kind << " " << op.amount
                      << "): rejected operation changed state\n";
        }
        return sys;
    };

    auto sys = run_stream(555, &errors);
    GeneralLedger replayed = sys->ledger().replay();
    for (const auto& [id, acct] : sys->ledger().accounts())
        if (replayed.balance(id) != acct.balance)
            errors << "replay mismatch on " << id << ": " << replayed.balance(id)
                   << " vs " << acct.balance << "\n";

    auto again = run_stream(555, nullptr);
    if (render_snapshot(*sys) != render_snapshot(*again))
        errors << "two runs with the same seed diverged\n";

    for (const auto& name : kScenarios) {
        Scenario sc =
            parse_scenario(read_file(std::string(SCENARIO_DIR) + "/" + name + ".scn"));
        std::string first, second;
        run_scenario(sc, [&](const std::string&, const std::string& b) { first += b; });
        run_scenario(sc, [&](const std::string&, const std::string& b) { second += b; });
        if (first != second) errors << name << ": two runs diverged\n";
    }
    report("rejections are atomic; replay and reruns are deterministic",
           errors.str());
}

// 6. With full loan weighting, each unit lent adds one unit of deposits and
//    one of risk assets, so the reserve constraint binds first exactly when
//    the reserve ratio exceeds the capital ratio.
void check_constraint_dominance() {
    std::ostringstream errors;
    const Money reserves = 1000;
    const Money capital = 1000;
    const std::int64_t grid[] = {1, 2, 4, 8, 12, 20};
    for (std::int64_t r : grid) {
        for (std::int64_t c : grid) {
            if (r == c) continue;
            RegulatoryParams params;
            params.reserve_ratio = Ratio{r, 100};
            params.capital_ratio = Ratio{c, 100};

            Money k_r = 0, k_c = 0;
            for (Money k = 1; k <= 200000; ++k) {
                if (k_r == 0 && required_reserve(params, k) > reserves) k_r = k;
                if (k_c == 0 && !capital_satisfied(capital, k, params.capital_ratio))
                    k_c = k;
                if (k_r && k_c) break;
            }
            if (!k_r || !k_c) {
                errors << "r=" << r << " c=" << c << ": no failure point found\n";
                continue;
            }
            bool reserve_first = k_r < k_c;
            bool expected = r > c;
            if (reserve_first != expected)
                errors << "r=" << r << "/100 c=" << c << "/100: reserve fails at " << k_r
                       << ", capital at " << k_c << "\n";
        }
    }
    report("binding constraint flips with the ratio ordering", errors.str());
}

}  // namespace

int main() {
    check_golden_snapshots();
    check_identities();
    check_money_supply_law();
    check_write_off_neutrality();
    check_determinism_and_atomicity();
    check_constraint_dominance();
    if (failures) {
        std::cout << failures << " acceptance check(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance checks passed\n";
    return 0;
}
