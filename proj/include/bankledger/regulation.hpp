#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bankledger/ledger.hpp"

namespace bankledger {

class Bank;
class ClearingSystem;

/// Exact rational ratio, e.g. the 2/100 reserve requirement. Kept as a
/// numerator/denominator pair so regulatory arithmetic stays in integers.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Parses "2/100" or a bare integer "1". Throws std::invalid_argument.
    static Ratio parse(std::string_view text);

    /// round-half-up(num * x / den), x >= 0.
    Money mul_round_half_up(Money x) const;

    /// floor(x * den / num); the inverse used for headroom computations.
    Money div_floor(Money x) const;

    bool positive() const { return num > 0; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// a > b for non-negative rationals.
bool ratio_greater(const Ratio& a, const Ratio& b);
Ratio ratio_mul(const Ratio& a, const Ratio& b);

struct RegulatoryParams {
    Ratio reserve_ratio{2, 100};
    Ratio capital_ratio{8, 100};
    // Risk weights per asset role. Loans (including interbank loans, which sit
    // in the same loans ledger) carry full weight; cash and reserves none.
    Ratio weight_loans{1, 1};
    Ratio weight_cash{0, 1};
    Ratio weight_reserves{0, 1};
};

struct ComplianceReport {
    std::string bank;
    Money required_reserves = 0;
    Money actual_reserves = 0;
    bool reserve_ok = true;
    Money risk_weighted_assets = 0;
    Money capital = 0;
    bool capital_ok = true;
    Money max_new_lending = 0;
};

Money required_reserve(const RegulatoryParams& params, Money deposits_total);

/// RWA with the loss provision netted from loans before weighting.
Money risk_weighted_assets(const Bank& bank, const RegulatoryParams& params);

/// capital >= capital_ratio * RWA, checked by exact cross-multiplication
/// (boundary inclusive).
bool capital_satisfied(Money capital, Money rwa, const Ratio& capital_ratio);

ComplianceReport check_reserve_requirement(const Bank& bank);
ComplianceReport check_capital_requirement(const Bank& bank,
                                           const RegulatoryParams& params);
ComplianceReport compliance(const Bank& bank);

/// Sum of customer deposit balances across all banks. Interbank and
/// central-bank loan liabilities, capital and income accounts are excluded.
Money money_supply(const ClearingSystem& clearing);

}  // namespace bankledger
