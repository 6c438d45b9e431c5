#include "bankledger/regulation.hpp"

#include <charconv>
#include <stdexcept>

#include "bankledger/bank.hpp"
#include "bankledger/clearing.hpp"

namespace bankledger {

static std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not an integer: " + std::string(text));
    return value;
}

Ratio Ratio::parse(std::string_view text) {
    auto slash = text.find('/');
    Ratio r;
    if (slash == std::string_view::npos) {
        r.num = parse_int(text);
        r.den = 1;
    } else {
        r.num = parse_int(text.substr(0, slash));
        r.den = parse_int(text.substr(slash + 1));
    }
    if (r.den <= 0 || r.num < 0)
        throw std::invalid_argument("ratio must be non-negative with positive denominator: " +
                                    std::string(text));
    return r;
}

Money Ratio::mul_round_half_up(Money x) const {
    // round-half-up(num*x/den) for x >= 0.
    return (2 * num * x + den) / (2 * den);
}

Money Ratio::div_floor(Money x) const {
    if (num == 0) throw std::invalid_argument("division by zero ratio");
    return x * den / num;
}

bool ratio_greater(const Ratio& a, const Ratio& b) {
    return a.num * b.den > b.num * a.den;
}

Ratio ratio_mul(const Ratio& a, const Ratio& b) {
    return Ratio{a.num * b.num, a.den * b.den};
}

Money required_reserve(const RegulatoryParams& params, Money deposits_total) {
    return params.reserve_ratio.mul_round_half_up(deposits_total);
}

Money risk_weighted_assets(const Bank& bank, const RegulatoryParams& params) {
    const GeneralLedger& lg = bank.ledger();
    Money net_loans =
        lg.balance(bank.loans_acct()) - lg.balance(bank.loss_provision_acct());
    return params.weight_loans.mul_round_half_up(net_loans) +
           params.weight_cash.mul_round_half_up(lg.balance(bank.cash_acct())) +
           params.weight_reserves.mul_round_half_up(lg.balance(bank.reserves_acct()));
}

bool capital_satisfied(Money capital, Money rwa, const Ratio& capital_ratio) {
    return capital * capital_ratio.den >= capital_ratio.num * rwa;
}

ComplianceReport check_reserve_requirement(const Bank& bank) {
    ComplianceReport report;
    report.bank = bank.id();
    report.required_reserves = required_reserve(bank.params(), bank.reservable_deposits());
    report.actual_reserves = bank.ledger().balance(bank.reserves_acct());
    report.reserve_ok = report.actual_reserves >= report.required_reserves;
    return report;
}

ComplianceReport check_capital_requirement(const Bank& bank,
                                           const RegulatoryParams& params) {
    ComplianceReport report;
    report.bank = bank.id();
    report.risk_weighted_assets = risk_weighted_assets(bank, params);
    report.capital = bank.ledger().balance(bank.capital_acct());
    report.capital_ok =
        capital_satisfied(report.capital, report.risk_weighted_assets, params.capital_ratio);
    Money limit = params.capital_ratio.div_floor(report.capital);
    report.max_new_lending =
        limit > report.risk_weighted_assets ? limit - report.risk_weighted_assets : 0;
    return report;
}

ComplianceReport compliance(const Bank& bank) {
    ComplianceReport report = check_capital_requirement(bank, bank.params());
    ComplianceReport reserve = check_reserve_requirement(bank);
    report.required_reserves = reserve.required_reserves;
    report.actual_reserves = reserve.actual_reserves;
    report.reserve_ok = reserve.reserve_ok;
    return report;
}

Money money_supply(const ClearingSystem& clearing) {
    Money total = 0;
    for (const auto& [id, bank] : clearing.banks()) total += bank->deposits_total();
    return total;
}

}  // namespace bankledger
