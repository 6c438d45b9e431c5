#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "bankledger/clearing.hpp"
#include "bankledger/regulation.hpp"
#include "bankledger/scenario.hpp"

namespace bankledger::test {

// The canonical two-bank opening position used throughout.
inline const char* kInitialScenario = R"(
param reserve_ratio=2/100
param capital_ratio=8/100
bank A loans=10000 cash=800 reserves=200 capital=1000
bank B loans=10000 cash=800 reserves=200 capital=1000
account A.C1 bank=A balance=5000
account A.C2 bank=A balance=5000
account B.C3 bank=B balance=5000
account B.C4 bank=B balance=5000
centralbank assets=400 income=0
)";

inline std::unique_ptr<ClearingSystem> make_initial_system() {
    return build_genesis(parse_scenario(kInitialScenario));
}

// A three-bank system with lending headroom, used by randomized streams.
inline const char* kThreeBankScenario = R"(
param reserve_ratio=2/100
param capital_ratio=8/100
bank A loans=10000 cash=5000 reserves=500 capital=2000
bank B loans=10000 cash=5000 reserves=500 capital=2000
bank C loans=10000 cash=5000 reserves=500 capital=2000
account A.C1 bank=A balance=6750
account A.C2 bank=A balance=6750
account B.C1 bank=B balance=6750
account B.C2 bank=B balance=6750
account C.C1 bank=C balance=6750
account C.C2 bank=C balance=6750
centralbank assets=1500 income=0
)";

inline std::unique_ptr<ClearingSystem> make_three_bank_system() {
    return build_genesis(parse_scenario(kThreeBankScenario));
}

// Accounting identity, trial balance, reserve mirror and loan-book
// consistency, across every entity. Returns an empty string when all hold.
inline std::string check_invariants(const ClearingSystem& clearing) {
    const GeneralLedger& lg = clearing.ledger();
    std::ostringstream out;
    auto check_entity = [&](const std::string& entity) {
        BalanceSheet sheet = lg.balance_sheet(entity);
        if (sheet.total_assets != sheet.total_liabilities_and_equity)
            out << entity << ": assets " << sheet.total_assets << " != L+E "
                << sheet.total_liabilities_and_equity << "\n";
    };
    for (const auto& [id, bank] : clearing.banks()) check_entity(id);
    check_entity(ClearingSystem::kCentralBankId);
    auto [debits, credits] = lg.trial_balance();
    if (debits != credits)
        out << "trial balance: debits " << debits << " != credits " << credits << "\n";
    if (!clearing.reserve_mirror_holds()) out << "reserve mirror broken\n";
    for (const auto& [id, bank] : clearing.banks()) {
        Money principal = 0;
        for (const auto& rec : bank->loan_book()) principal += rec.principal_outstanding;
        if (principal != lg.balance(bank->loans_acct()))
            out << id << ": loan book " << principal << " != loans account "
                << lg.balance(bank->loans_acct()) << "\n";
    }
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace bankledger::test
