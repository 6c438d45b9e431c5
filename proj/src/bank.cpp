#include "bankledger/bank.hpp"

#include <algorithm>

namespace bankledger {

Bank::Bank(GeneralLedger& ledger, std::string id, const RegulatoryParams& params,
           Money loans, Money cash, Money reserves, Money capital)
    : id_(std::move(id)), ledger_(&ledger), params_(&params) {
    loans_ = id_ + ".loans";
    cash_ = id_ + ".cash";
    reserves_ = id_ + ".reserves";
    capital_ = id_ + ".capital";
    interest_income_ = id_ + ".interest_income";
    loss_provision_ = id_ + ".loss_provision";
    ledger_->create_account(loans_, id_, AccountClass::Asset, loans);
    ledger_->create_account(cash_, id_, AccountClass::Asset, cash);
    ledger_->create_account(reserves_, id_, AccountClass::Asset, reserves);
    ledger_->create_account(capital_, id_, AccountClass::Capital, capital);
    ledger_->create_account(interest_income_, id_, AccountClass::Income, 0);
    ledger_->create_account(loss_provision_, id_, AccountClass::ContraAsset, 0);
    if (loans > 0) {
        // Opening loan book, one aggregate record so principal always matches
        // the loans account.
        loan_book_.push_back(LoanRecord{id_ + ".book", "", loans, id_});
    }
}

void Bank::link_central_bank(std::string cb_assets_acct, std::string cb_reserve_acct) {
    cb_assets_ = std::move(cb_assets_acct);
    cb_reserve_ = std::move(cb_reserve_acct);
}

void Bank::add_customer(const std::string& customer, Money opening) {
    if (deposits_.count(customer))
        throw LedgerError(Err::DuplicateAccount, "customer already exists: " + customer);
    ledger_->create_account(customer, id_, AccountClass::Liability, opening);
    deposits_[customer] = customer;
}

bool Bank::has_customer(const std::string& customer) const {
    return deposits_.count(customer) != 0;
}

const std::string& Bank::deposit_acct(const std::string& customer) const {
    auto it = deposits_.find(customer);
    if (it == deposits_.end())
        throw LedgerError(Err::UnknownCustomer,
                          "no customer " + customer + " at bank " + id_);
    return it->second;
}

const std::string& Bank::loan_liability_acct(const std::string& lender) {
    auto it = loan_liabilities_.find(lender);
    if (it == loan_liabilities_.end()) {
        std::string acct = id_ + ".loan_from." + lender;
        ledger_->create_account(acct, id_, AccountClass::Liability, 0);
        it = loan_liabilities_.emplace(lender, std::move(acct)).first;
    }
    return it->second;
}

Money Bank::deposits_total() const {
    Money total = 0;
    for (const auto& [cust, acct] : deposits_) total += ledger_->balance(acct);
    return total;
}

Money Bank::reservable_deposits() const {
    Money total = 0;
    for (const auto& [cust, acct] : deposits_)
        if (ledger_->account(acct).reservable) total += ledger_->balance(acct);
    return total;
}

LoanRecord* Bank::find_loan(const std::string& loan_id) {
    for (auto& rec : loan_book_)
        if (rec.id == loan_id) return &rec;
    return nullptr;
}

void Bank::register_loan(LoanRecord record) { loan_book_.push_back(std::move(record)); }

void Bank::reduce_loan(const std::string& loan_id, Money amount) {
    LoanRecord* rec = find_loan(loan_id);
    if (!rec) throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
    rec->principal_outstanding -= amount;
    if (rec->principal_outstanding == 0)
        loan_book_.erase(std::remove_if(loan_book_.begin(), loan_book_.end(),
                                        [&](const LoanRecord& r) { return r.id == loan_id; }),
                         loan_book_.end());
}

std::string Bank::next_loan_id() {
    return id_ + ".L" + std::to_string(++loan_counter_);
}

JournalEntry Bank::deposit_cash(const std::string& customer, Money amount) {
    const std::string& dep = deposit_acct(customer);
    return ledger_->post("deposit cash " + std::to_string(amount) + " for " + customer,
                         {{cash_, Side::Debit, amount}, {dep, Side::Credit, amount}});
}

JournalEntry Bank::intra_bank_transfer(const std::string& from, const std::string& to,
                                       Money amount) {
    const std::string& src = deposit_acct(from);
    const std::string& dst = deposit_acct(to);
    if (from == to)
        throw LedgerError(Err::InvalidTransfer, "transfer to self: " + from);
    if (amount > 0 && ledger_->balance(src) < amount)
        throw LedgerError(Err::InsufficientFunds,
                          from + " holds " + std::to_string(ledger_->balance(src)) +
                              ", cannot transfer " + std::to_string(amount));
    return ledger_->post("transfer " + std::to_string(amount) + " " + from + " -> " + to,
                         {{src, Side::Debit, amount}, {dst, Side::Credit, amount}});
}

LendResult Bank::lend_own_customer(const std::string& customer, Money amount,
                                   std::string loan_id) {
    const std::string& dep = deposit_acct(customer);
    if (amount <= 0)
        throw LedgerError(Err::ZeroAmountPosting, "loan amount must be positive");
    Money rwa_after =
        risk_weighted_assets(*this, *params_) + params_->weight_loans.mul_round_half_up(amount);
    if (!capital_satisfied(ledger_->balance(capital_), rwa_after, params_->capital_ratio))
        throw LedgerError(Err::CapitalLimitExceeded,
                          "lending " + std::to_string(amount) +
                              " would breach the capital requirement of bank " + id_);
    // Reserve top-up against the new deposit level, funded from cash.
    Money required = required_reserve(*params_, reservable_deposits() + amount);
    Money topup = required - ledger_->balance(reserves_);
    if (topup > 0 && ledger_->balance(cash_) < topup)
        throw LedgerError(Err::InsufficientLiquidity,
                          "cash " + std::to_string(ledger_->balance(cash_)) +
                              " cannot fund reserve top-up " + std::to_string(topup));

    std::vector<EntryDraft> drafts;
    drafts.push_back({"loan " + std::to_string(amount) + " to " + customer,
                      {{loans_, Side::Debit, amount}, {dep, Side::Credit, amount}}});
    if (topup > 0) {
        drafts.push_back({"reserve top-up " + std::to_string(topup) + " for " + id_,
                          {{reserves_, Side::Debit, topup},
                           {cash_, Side::Credit, topup},
                           {cb_assets_, Side::Debit, topup},
                           {cb_reserve_, Side::Credit, topup}}});
    }
    LendResult result;
    result.entries = ledger_->post_batch(std::move(drafts));
    if (loan_id.empty()) loan_id = next_loan_id();
    result.loan = LoanRecord{loan_id, customer, amount, id_};
    register_loan(result.loan);
    return result;
}

JournalEntry Bank::repay_principal(const std::string& loan_id,
                                   const std::string& from_customer, Money amount) {
    const std::string& dep = deposit_acct(from_customer);
    LoanRecord* rec = find_loan(loan_id);
    if (!rec) throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
    if (amount > rec->principal_outstanding)
        throw LedgerError(Err::OverRepayment,
                          "repaying " + std::to_string(amount) + " exceeds principal " +
                              std::to_string(rec->principal_outstanding));
    if (amount > 0 && ledger_->balance(dep) < amount)
        throw LedgerError(Err::InsufficientFunds,
                          from_customer + " cannot fund repayment of " +
                              std::to_string(amount));
    JournalEntry entry =
        ledger_->post("repay principal " + std::to_string(amount) + " on " + loan_id,
                      {{dep, Side::Debit, amount}, {loans_, Side::Credit, amount}});
    reduce_loan(loan_id, amount);
    return entry;
}

JournalEntry Bank::pay_loan_interest(const std::string& loan_id,
                                     const std::string& from_customer, Money amount) {
    const std::string& dep = deposit_acct(from_customer);
    if (!find_loan(loan_id))
        throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
    if (amount > 0 && ledger_->balance(dep) < amount)
        throw LedgerError(Err::InsufficientFunds,
                          from_customer + " cannot fund interest of " +
                              std::to_string(amount));
    return ledger_->post("interest " + std::to_string(amount) + " on " + loan_id,
                         {{dep, Side::Debit, amount},
                          {interest_income_, Side::Credit, amount}});
}

JournalEntry Bank::provision_for_loss(Money amount) {
    if (amount > 0 && ledger_->balance(interest_income_) < amount)
        throw LedgerError(Err::InsufficientIncome,
                          "income " + std::to_string(ledger_->balance(interest_income_)) +
                              " cannot cover provision " + std::to_string(amount));
    return ledger_->post("loss provision " + std::to_string(amount),
                         {{interest_income_, Side::Debit, amount},
                          {loss_provision_, Side::Credit, amount}});
}

JournalEntry Bank::write_off_loan(const std::string& loan_id, Money amount) {
    LoanRecord* rec = find_loan(loan_id);
    if (!rec) throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
    if (amount > 0 && ledger_->balance(loss_provision_) < amount)
        throw LedgerError(Err::InsufficientProvision,
                          "provision " + std::to_string(ledger_->balance(loss_provision_)) +
                              " cannot cover write-off " + std::to_string(amount));
    if (amount > rec->principal_outstanding)
        throw LedgerError(Err::OverWriteOff,
                          "write-off " + std::to_string(amount) + " exceeds principal " +
                              std::to_string(rec->principal_outstanding));
    JournalEntry entry =
        ledger_->post("write off " + std::to_string(amount) + " of " + loan_id,
                      {{loss_provision_, Side::Debit, amount},
                       {loans_, Side::Credit, amount}});
    reduce_loan(loan_id, amount);
    return entry;
}

std::vector<JournalEntry> sell_stock(Bank& issuer, Bank& buyer_bank,
                                     const std::string& buyer_customer, Money amount) {
    const std::string& dep = buyer_bank.deposit_acct(buyer_customer);
    GeneralLedger& lg = issuer.ledger();
    if (amount > 0 && lg.balance(dep) < amount)
        throw LedgerError(Err::InsufficientFunds,
                          buyer_customer + " cannot fund stock purchase of " +
                              std::to_string(amount));
    std::string desc = buyer_customer + " buys " + std::to_string(amount) +
                       " of bank " + issuer.id() + " stock";
    if (issuer.id() == buyer_bank.id()) {
        return {lg.post(desc, {{dep, Side::Debit, amount},
                               {issuer.capital_acct(), Side::Credit, amount}})};
    }
    if (amount > 0 && lg.balance(buyer_bank.reserves_acct()) < amount)
        throw LedgerError(Err::InsufficientReserves,
                          "bank " + buyer_bank.id() + " reserves cannot settle " +
                              std::to_string(amount));
    // Settles directly across the reserve accounts, mirrored at the
    // central bank.
    return {lg.post(desc, {{dep, Side::Debit, amount},
                           {issuer.capital_acct(), Side::Credit, amount},
                           {issuer.reserves_acct(), Side::Debit, amount},
                           {buyer_bank.reserves_acct(), Side::Credit, amount},
                           {buyer_bank.cb_reserve_acct(), Side::Debit, amount},
                           {issuer.cb_reserve_acct(), Side::Credit, amount}})};
}

}  // namespace bankledger
