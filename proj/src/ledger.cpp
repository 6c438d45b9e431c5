#include "bankledger/ledger.hpp"

#include <algorithm>

namespace bankledger {

const char* to_string(Err e) {
    switch (e) {
        case Err::UnbalancedEntry: return "UnbalancedEntry";
        case Err::UnknownAccount: return "UnknownAccount";
        case Err::NegativeBalance: return "NegativeBalance";
        case Err::ZeroAmountPosting: return "ZeroAmountPosting";
        case Err::TooFewPostings: return "TooFewPostings";
        case Err::UnknownEntity: return "UnknownEntity";
        case Err::UnknownCustomer: return "UnknownCustomer";
        case Err::UnknownLoan: return "UnknownLoan";
        case Err::InsufficientFunds: return "InsufficientFunds";
        case Err::InsufficientLiquidity: return "InsufficientLiquidity";
        case Err::InsufficientReserves: return "InsufficientReserves";
        case Err::InsufficientIncome: return "InsufficientIncome";
        case Err::InsufficientProvision: return "InsufficientProvision";
        case Err::InsufficientCentralBankIncome: return "InsufficientCentralBankIncome";
        case Err::CapitalLimitExceeded: return "CapitalLimitExceeded";
        case Err::OverRepayment: return "OverRepayment";
        case Err::OverWriteOff: return "OverWriteOff";
        case Err::DuplicateAccount: return "DuplicateAccount";
        case Err::InvalidTransfer: return "InvalidTransfer";
    }
    return "UnknownError";
}

Account& GeneralLedger::create_account(std::string id, std::string owner,
                                       AccountClass cls, Money opening) {
    if (accounts_.count(id))
        throw LedgerError(Err::DuplicateAccount, "account already exists: " + id);
    if (opening < 0)
        throw LedgerError(Err::NegativeBalance, "negative opening balance: " + id);
    Account acct;
    acct.id = id;
    acct.owner = std::move(owner);
    acct.cls = cls;
    acct.balance = opening;
    genesis_[id] = opening;
    return accounts_.emplace(std::move(id), std::move(acct)).first->second;
}

bool GeneralLedger::has_account(const std::string& id) const {
    return accounts_.count(id) != 0;
}

const Account& GeneralLedger::account(const std::string& id) const {
    auto it = accounts_.find(id);
    if (it == accounts_.end())
        throw LedgerError(Err::UnknownAccount, "unknown account: " + id);
    return it->second;
}

Account& GeneralLedger::account_mut(const std::string& id) {
    auto it = accounts_.find(id);
    if (it == accounts_.end())
        throw LedgerError(Err::UnknownAccount, "unknown account: " + id);
    return it->second;
}

Money GeneralLedger::balance(const std::string& id) const {
    return account(id).balance;
}

// Signed effect of a posting on the account's normal-orientation balance.
static Money signed_delta(const Account& acct, const Posting& p) {
    bool increases = (p.side == Side::Debit) == debit_normal(acct.cls);
    return increases ? p.amount : -p.amount;
}

void GeneralLedger::validate(const EntryDraft& draft,
                             const std::map<std::string, Money>& shadow) const {
    if (draft.postings.size() < 2)
        throw LedgerError(Err::TooFewPostings,
                          "entry needs at least two postings: " + draft.description);
    Money debits = 0, credits = 0;
    for (const auto& p : draft.postings) {
        if (p.amount <= 0)
            throw LedgerError(Err::ZeroAmountPosting,
                              "posting amount must be positive on " + p.account);
        if (!accounts_.count(p.account))
            throw LedgerError(Err::UnknownAccount, "unknown account: " + p.account);
        (p.side == Side::Debit ? debits : credits) += p.amount;
    }
    if (debits != credits)
        throw LedgerError(Err::UnbalancedEntry,
                          "debits " + std::to_string(debits) + " != credits " +
                              std::to_string(credits) + " in: " + draft.description);
    // Non-negativity on the resulting balances.
    std::map<std::string, Money> after;
    for (const auto& p : draft.postings) {
        const Account& acct = accounts_.at(p.account);
        auto it = after.find(p.account);
        Money base = it != after.end() ? it->second
                                       : (shadow.count(p.account) ? shadow.at(p.account)
                                                                  : acct.balance);
        after[p.account] = base + signed_delta(acct, p);
    }
    for (const auto& [id, bal] : after) {
        if (bal < 0 && !accounts_.at(id).allow_overdraft)
            throw LedgerError(Err::NegativeBalance,
                              "entry would drive " + id + " to " + std::to_string(bal));
    }
}

const JournalEntry& GeneralLedger::post(std::string description,
                                        std::vector<Posting> postings) {
    post_batch({EntryDraft{std::move(description), std::move(postings)}});
    return log_.back();
}

std::vector<JournalEntry> GeneralLedger::post_batch(std::vector<EntryDraft> drafts) {
    // First pass: validate every draft against a shadow balance map so that a
    // failure anywhere leaves the ledger untouched.
    std::map<std::string, Money> shadow;
    for (const auto& d : drafts) {
        validate(d, shadow);
        for (const auto& p : d.postings) {
            const Account& acct = accounts_.at(p.account);
            Money base = shadow.count(p.account) ? shadow[p.account] : acct.balance;
            shadow[p.account] = base + signed_delta(acct, p);
        }
    }
    // Commit.
    std::vector<JournalEntry> accepted;
    accepted.reserve(drafts.size());
    for (auto& d : drafts) {
        JournalEntry entry;
        entry.seq = next_seq_++;
        entry.description = std::move(d.description);
        entry.postings = std::move(d.postings);
        for (const auto& p : entry.postings) {
            Account& acct = accounts_.at(p.account);
            acct.balance += signed_delta(acct, p);
            (p.side == Side::Debit ? debits_ : credits_) += p.amount;
        }
        log_.push_back(entry);
        accepted.push_back(std::move(entry));
    }
    return accepted;
}

BalanceSheet GeneralLedger::balance_sheet(const std::string& entity) const {
    BalanceSheet sheet;
    sheet.entity = entity;
    bool found = false;
    for (const auto& [id, acct] : accounts_) {
        if (acct.owner != entity) continue;
        found = true;
        switch (acct.cls) {
            case AccountClass::Asset:
                sheet.assets.emplace_back(id, acct.balance);
                break;
            case AccountClass::ContraAsset:
                sheet.assets.emplace_back(id, -acct.balance);
                break;
            case AccountClass::Liability:
                sheet.liabilities.emplace_back(id, acct.balance);
                break;
            case AccountClass::Capital:
                sheet.equity.common_stock += acct.balance;
                break;
            case AccountClass::Income:
                sheet.equity.income += acct.balance;
                break;
            case AccountClass::Expense:
                sheet.equity.expenses += acct.balance;
                break;
        }
    }
    if (!found)
        throw LedgerError(Err::UnknownEntity, "unknown entity: " + entity);
    for (const auto& [id, v] : sheet.assets) sheet.total_assets += v;
    Money liab = 0;
    for (const auto& [id, v] : sheet.liabilities) liab += v;
    sheet.total_liabilities_and_equity = liab + sheet.equity.total();
    return sheet;
}

EquityBreakdown GeneralLedger::equity_decomposition(const std::string& entity) const {
    return balance_sheet(entity).equity;
}

GeneralLedger GeneralLedger::replay() const {
    GeneralLedger fresh;
    for (const auto& [id, acct] : accounts_) {
        Account& a = fresh.create_account(id, acct.owner, acct.cls, genesis_.at(id));
        a.allow_overdraft = acct.allow_overdraft;
        a.reservable = acct.reservable;
    }
    for (const auto& entry : log_) fresh.post(entry.description, entry.postings);
    return fresh;
}

std::vector<const Account*> GeneralLedger::accounts_of(const std::string& entity) const {
    std::vector<const Account*> out;
    for (const auto& [id, acct] : accounts_)
        if (acct.owner == entity) out.push_back(&acct);
    if (out.empty())
        throw LedgerError(Err::UnknownEntity, "unknown entity: " + entity);
    return out;
}

}  // namespace bankledger
