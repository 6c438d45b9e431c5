#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bankledger/ledger.hpp"
#include "bankledger/regulation.hpp"

namespace bankledger {

struct LoanRecord {
    std::string id;
    std::string borrower;  // customer id, bank id for interbank loans, empty for the genesis book
    Money principal_outstanding = 0;
    std::string originating_bank;
};

struct LendResult {
    std::vector<JournalEntry> entries;
    LoanRecord loan;
    // Present when the borrower's bank fails its reserve check after a
    // cross-bank credit; advisory only, never blocking.
    std::optional<ComplianceReport> borrower_reserve_report;
};

/// A commercial bank: a fixed chart of accounts over the shared general
/// ledger plus a loan register. Account ids are "<bank>.<role>"; customer
/// deposit accounts keep the customer's own id (e.g. "A.C1").
class Bank {
public:
    Bank(GeneralLedger& ledger, std::string id, const RegulatoryParams& params,
         Money loans, Money cash, Money reserves, Money capital);

    /// Wires the accounts at the central bank this bank settles through.
    void link_central_bank(std::string cb_assets_acct, std::string cb_reserve_acct);

    void add_customer(const std::string& customer, Money opening);
    bool has_customer(const std::string& customer) const;

    JournalEntry deposit_cash(const std::string& customer, Money amount);
    JournalEntry intra_bank_transfer(const std::string& from, const std::string& to,
                                     Money amount);
    LendResult lend_own_customer(const std::string& customer, Money amount,
                                 std::string loan_id = "");
    JournalEntry repay_principal(const std::string& loan_id,
                                 const std::string& from_customer, Money amount);
    JournalEntry pay_loan_interest(const std::string& loan_id,
                                   const std::string& from_customer, Money amount);
    JournalEntry provision_for_loss(Money amount);
    JournalEntry write_off_loan(const std::string& loan_id, Money amount);

    const std::string& id() const { return id_; }
    GeneralLedger& ledger() { return *ledger_; }
    const GeneralLedger& ledger() const { return *ledger_; }
    const RegulatoryParams& params() const { return *params_; }

    const std::string& loans_acct() const { return loans_; }
    const std::string& cash_acct() const { return cash_; }
    const std::string& reserves_acct() const { return reserves_; }
    const std::string& capital_acct() const { return capital_; }
    const std::string& interest_income_acct() const { return interest_income_; }
    const std::string& loss_provision_acct() const { return loss_provision_; }
    const std::string& cb_reserve_acct() const { return cb_reserve_; }
    const std::string& cb_assets_acct() const { return cb_assets_; }

    const std::map<std::string, std::string>& deposit_accts() const { return deposits_; }
    const std::string& deposit_acct(const std::string& customer) const;

    /// Liability account towards a lender ("Loan from Bank X"), created lazily.
    const std::string& loan_liability_acct(const std::string& lender);
    const std::map<std::string, std::string>& loan_liability_accts() const {
        return loan_liabilities_;
    }

    Money deposits_total() const;
    Money reservable_deposits() const;

    const std::vector<LoanRecord>& loan_book() const { return loan_book_; }
    LoanRecord* find_loan(const std::string& loan_id);
    void register_loan(LoanRecord record);
    void reduce_loan(const std::string& loan_id, Money amount);  // retires at zero

    std::string next_loan_id();

private:
    friend std::vector<JournalEntry> sell_stock(Bank&, Bank&, const std::string&, Money);

    std::string id_;
    GeneralLedger* ledger_;
    const RegulatoryParams* params_;
    std::string loans_, cash_, reserves_, capital_, interest_income_, loss_provision_;
    std::string cb_assets_, cb_reserve_;
    std::map<std::string, std::string> deposits_;
    std::map<std::string, std::string> loan_liabilities_;
    std::vector<LoanRecord> loan_book_;
    int loan_counter_ = 0;
};

/// Stock sale from a buyer's deposit into the issuing bank's capital. Rides
/// the reserve accounts when buyer and issuer differ; collapses to a single
/// intra-bank entry when the issuer buys from its own customer.
std::vector<JournalEntry> sell_stock(Bank& issuer, Bank& buyer_bank,
                                     const std::string& buyer_customer, Money amount);

}  // namespace bankledger
