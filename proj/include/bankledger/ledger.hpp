#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bankledger {

/// Money is always integer minor units. No floating point anywhere in the
/// bookkeeping path.
using Money = std::int64_t;

enum class AccountClass { Asset, ContraAsset, Liability, Income, Expense, Capital };

enum class Side { Debit, Credit };

/// Asset and Expense accounts grow on the debit side; everything else
/// (including contra-assets) grows on the credit side.
constexpr bool debit_normal(AccountClass c) {
    return c == AccountClass::Asset || c == AccountClass::Expense;
}

enum class Err {
    UnbalancedEntry,
    UnknownAccount,
    NegativeBalance,
    ZeroAmountPosting,
    TooFewPostings,
    UnknownEntity,
    UnknownCustomer,
    UnknownLoan,
    InsufficientFunds,
    InsufficientLiquidity,
    InsufficientReserves,
    InsufficientIncome,
    InsufficientProvision,
    InsufficientCentralBankIncome,
    CapitalLimitExceeded,
    OverRepayment,
    OverWriteOff,
    DuplicateAccount,
    InvalidTransfer,
};

const char* to_string(Err e);

class LedgerError : public std::runtime_error {
public:
    LedgerError(Err code, std::string msg)
        : std::runtime_error(std::move(msg)), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

struct Posting {
    std::string account;
    Side side;
    Money amount;  // strictly positive
};

/// An atomic balanced set of postings. The only mutation primitive.
struct JournalEntry {
    std::uint64_t seq = 0;
    std::string description;
    std::vector<Posting> postings;
};

/// A journal entry before it has been accepted and sequenced.
struct EntryDraft {
    std::string description;
    std::vector<Posting> postings;
};

struct Account {
    std::string id;
    std::string owner;  // entity id ("A", "B", "CB")
    AccountClass cls;
    Money balance = 0;       // in normal-balance orientation
    bool allow_overdraft = false;
    bool reservable = true;  // deposit accounts only; ignored elsewhere
};

struct EquityBreakdown {
    Money common_stock = 0;
    Money retained_earnings = 0;
    Money income = 0;
    Money expenses = 0;
    Money dividends = 0;
    Money total() const {
        return common_stock + retained_earnings + (income - expenses) - dividends;
    }
};

struct BalanceSheet {
    std::string entity;
    std::vector<std::pair<std::string, Money>> assets;       // contra lines negative
    std::vector<std::pair<std::string, Money>> liabilities;
    EquityBreakdown equity;
    Money total_assets = 0;
    Money total_liabilities_and_equity = 0;
};

/// The single global ledger: every account of every entity (banks and the
/// central bank) lives here, so cross-entity operations are single balanced
/// entries and the trial balance spans the whole system.
class GeneralLedger {
public:
    Account& create_account(std::string id, std::string owner, AccountClass cls,
                            Money opening = 0);
    bool has_account(const std::string& id) const;
    const Account& account(const std::string& id) const;  // throws UnknownAccount
    Account& account_mut(const std::string& id);
    Money balance(const std::string& id) const;

    /// Validates and applies one entry atomically.
    const JournalEntry& post(std::string description, std::vector<Posting> postings);

    /// Validates a sequence of entries against a shadow state and applies all
    /// of them, or none. Gives multi-entry operations instruction-level
    /// atomicity.
    std::vector<JournalEntry> post_batch(std::vector<EntryDraft> drafts);

    /// Total debits and credits across all accepted entries since genesis.
    std::pair<Money, Money> trial_balance() const { return {debits_, credits_}; }

    BalanceSheet balance_sheet(const std::string& entity) const;
    EquityBreakdown equity_decomposition(const std::string& entity) const;

    const std::vector<JournalEntry>& log() const { return log_; }
    std::uint64_t next_seq() const { return next_seq_; }

    /// Rebuilds a ledger from genesis balances plus the entry log.
    GeneralLedger replay() const;

    /// Accounts owned by an entity, sorted by id. Throws UnknownEntity if none.
    std::vector<const Account*> accounts_of(const std::string& entity) const;
    const std::map<std::string, Account>& accounts() const { return accounts_; }

private:
    void validate(const EntryDraft& draft,
                  const std::map<std::string, Money>& shadow) const;

    std::map<std::string, Account> accounts_;
    std::map<std::string, Money> genesis_;
    std::vector<JournalEntry> log_;
    std::uint64_t next_seq_ = 1;
    Money debits_ = 0;
    Money credits_ = 0;
};

}  // namespace bankledger
