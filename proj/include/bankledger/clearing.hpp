#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bankledger/bank.hpp"
#include "bankledger/ledger.hpp"
#include "bankledger/regulation.hpp"

namespace bankledger {

/// The central bank plus every commercial bank, all posting into one shared
/// general ledger. Cross-bank operations are serialized here; each one is a
/// short batch of balanced entries applied atomically.
class ClearingSystem {
public:
    /// cb_assets is the central bank's aggregate asset position backing the
    /// reserve liabilities; cb_income is the pool available for paying
    /// interest on reserves.
    ClearingSystem(const RegulatoryParams& params, Money cb_assets, Money cb_income);

    // Banks hold pointers into this object.
    ClearingSystem(const ClearingSystem&) = delete;
    ClearingSystem& operator=(const ClearingSystem&) = delete;

    GeneralLedger& ledger() { return ledger_; }
    const GeneralLedger& ledger() const { return ledger_; }
    const RegulatoryParams& params() const { return params_; }

    Bank& add_bank(const std::string& id, Money loans, Money cash, Money reserves,
                   Money capital);
    Bank& bank(const std::string& id);
    const Bank& bank(const std::string& id) const;
    bool has_bank(const std::string& id) const { return banks_.count(id) != 0; }
    const std::map<std::string, std::unique_ptr<Bank>>& banks() const { return banks_; }

    std::vector<JournalEntry> move_cash_to_reserves(const std::string& bank_id,
                                                    Money amount);
    std::vector<JournalEntry> interbank_transfer(const std::string& from_bank,
                                                 const std::string& from_customer,
                                                 const std::string& to_bank,
                                                 const std::string& to_customer,
                                                 Money amount,
                                                 bool force_clearing = false);
    LendResult lend_other_bank_customer(const std::string& lender,
                                        const std::string& borrower_bank,
                                        const std::string& borrower, Money amount,
                                        std::string loan_id = "");
    LendResult interbank_loan(const std::string& lender, const std::string& borrower,
                              Money amount, std::string loan_id = "");
    LendResult borrow_from_central_bank(const std::string& bank_id, Money amount);
    std::vector<JournalEntry> pay_interest_on_reserves(const std::string& bank_id,
                                                       Money amount);

    static constexpr const char* kCentralBankId = "CB";
    const std::string& cb_assets_acct() const { return cb_assets_; }
    const std::string& cb_income_acct() const { return cb_income_; }
    std::string cb_reserve_acct(const std::string& bank_id) const;
    /// Lender-of-last-resort loan asset, created on first borrowing.
    const std::string& cb_loan_acct(const std::string& bank_id);
    const std::vector<LoanRecord>& cb_loan_book() const { return cb_loan_book_; }

    /// Finds a loan anywhere in the system; returns the holding bank or null.
    Bank* find_loan_bank(const std::string& loan_id);

    /// b.reserves == CB reserve liability for b, for every bank.
    bool reserve_mirror_holds() const;

private:
    RegulatoryParams params_;
    GeneralLedger ledger_;
    std::map<std::string, std::unique_ptr<Bank>> banks_;
    std::map<std::string, std::string> cb_loan_accts_;
    std::vector<LoanRecord> cb_loan_book_;
    std::string cb_assets_;
    std::string cb_income_;
};

}  // namespace bankledger
