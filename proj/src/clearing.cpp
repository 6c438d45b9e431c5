#include "bankledger/clearing.hpp"

namespace bankledger {

ClearingSystem::ClearingSystem(const RegulatoryParams& params, Money cb_assets,
                               Money cb_income)
    : params_(params) {
    cb_assets_ = std::string(kCentralBankId) + ".assets";
    cb_income_ = std::string(kCentralBankId) + ".income";
    ledger_.create_account(cb_assets_, kCentralBankId, AccountClass::Asset, cb_assets);
    ledger_.create_account(cb_income_, kCentralBankId, AccountClass::Liability, cb_income);
}

Bank& ClearingSystem::add_bank(const std::string& id, Money loans, Money cash,
                               Money reserves, Money capital) {
    if (banks_.count(id))
        throw LedgerError(Err::DuplicateAccount, "bank already exists: " + id);
    auto bank = std::make_unique<Bank>(ledger_, id, params_, loans, cash, reserves, capital);
    std::string reserve_liability = cb_reserve_acct(id);
    ledger_.create_account(reserve_liability, kCentralBankId, AccountClass::Liability,
                           reserves);
    bank->link_central_bank(cb_assets_, reserve_liability);
    return *banks_.emplace(id, std::move(bank)).first->second;
}

Bank& ClearingSystem::bank(const std::string& id) {
    auto it = banks_.find(id);
    if (it == banks_.end())
        throw LedgerError(Err::UnknownEntity, "unknown bank: " + id);
    return *it->second;
}

const Bank& ClearingSystem::bank(const std::string& id) const {
    auto it = banks_.find(id);
    if (it == banks_.end())
        throw LedgerError(Err::UnknownEntity, "unknown bank: " + id);
    return *it->second;
}

std::string ClearingSystem::cb_reserve_acct(const std::string& bank_id) const {
    return std::string(kCentralBankId) + ".reserves." + bank_id;
}

const std::string& ClearingSystem::cb_loan_acct(const std::string& bank_id) {
    auto it = cb_loan_accts_.find(bank_id);
    if (it == cb_loan_accts_.end()) {
        std::string acct = std::string(kCentralBankId) + ".loan_to." + bank_id;
        ledger_.create_account(acct, kCentralBankId, AccountClass::Asset, 0);
        it = cb_loan_accts_.emplace(bank_id, std::move(acct)).first;
    }
    return it->second;
}

Bank* ClearingSystem::find_loan_bank(const std::string& loan_id) {
    for (auto& [id, bank] : banks_)
        if (bank->find_loan(loan_id)) return bank.get();
    return nullptr;
}

bool ClearingSystem::reserve_mirror_holds() const {
    for (const auto& [id, bank] : banks_)
        if (ledger_.balance(bank->reserves_acct()) != ledger_.balance(cb_reserve_acct(id)))
            return false;
    return true;
}

static EntryDraft staging_draft(const Bank& b, Money amount) {
    return {"move " + std::to_string(amount) + " of cash to reserves, bank " + b.id(),
            {{b.reserves_acct(), Side::Debit, amount},
             {b.cash_acct(), Side::Credit, amount},
             {b.cb_assets_acct(), Side::Debit, amount},
             {b.cb_reserve_acct(), Side::Credit, amount}}};
}

std::vector<JournalEntry> ClearingSystem::move_cash_to_reserves(const std::string& bank_id,
                                                                Money amount) {
    Bank& b = bank(bank_id);
    if (amount > 0 && ledger_.balance(b.cash_acct()) < amount)
        throw LedgerError(Err::InsufficientLiquidity,
                          "bank " + bank_id + " cash " +
                              std::to_string(ledger_.balance(b.cash_acct())) +
                              " cannot cover " + std::to_string(amount));
    return ledger_.post_batch({staging_draft(b, amount)});
}

std::vector<JournalEntry> ClearingSystem::interbank_transfer(
    const std::string& from_bank, const std::string& from_customer,
    const std::string& to_bank, const std::string& to_customer, Money amount,
    bool force_clearing) {
    Bank& payer = bank(from_bank);
    Bank& payee = bank(to_bank);
    if (from_bank == to_bank && !force_clearing)
        return {payer.intra_bank_transfer(from_customer, to_customer, amount)};

    const std::string& src = payer.deposit_acct(from_customer);
    const std::string& dst = payee.deposit_acct(to_customer);
    if (from_customer == to_customer)
        throw LedgerError(Err::InvalidTransfer, "transfer to self: " + from_customer);
    if (amount > 0 && ledger_.balance(src) < amount)
        throw LedgerError(Err::InsufficientFunds,
                          from_customer + " cannot fund transfer of " +
                              std::to_string(amount));
    if (amount > 0 && ledger_.balance(payer.cash_acct()) < amount)
        throw LedgerError(Err::InsufficientLiquidity,
                          "bank " + from_bank + " cannot stage " + std::to_string(amount) +
                              " into reserves");
    // Step 1 stages the amount into the payer's reserves; step 2 settles
    // across the reserve accounts.
    EntryDraft settle{"transfer " + std::to_string(amount) + " " + from_customer +
                          " -> " + to_customer,
                      {{src, Side::Debit, amount},
                       {payer.reserves_acct(), Side::Credit, amount},
                       {payee.reserves_acct(), Side::Debit, amount},
                       {dst, Side::Credit, amount},
                       {payer.cb_reserve_acct(), Side::Debit, amount},
                       {payee.cb_reserve_acct(), Side::Credit, amount}}};
    return ledger_.post_batch({staging_draft(payer, amount), std::move(settle)});
}

LendResult ClearingSystem::lend_other_bank_customer(const std::string& lender,
                                                    const std::string& borrower_bank,
                                                    const std::string& borrower,
                                                    Money amount, std::string loan_id) {
    Bank& from = bank(lender);
    Bank& to = bank(borrower_bank);
    const std::string& dst = to.deposit_acct(borrower);
    if (amount <= 0)
        throw LedgerError(Err::ZeroAmountPosting, "loan amount must be positive");
    Money rwa_after = risk_weighted_assets(from, params_) +
                      params_.weight_loans.mul_round_half_up(amount);
    if (!capital_satisfied(ledger_.balance(from.capital_acct()), rwa_after,
                           params_.capital_ratio))
        throw LedgerError(Err::CapitalLimitExceeded,
                          "lending " + std::to_string(amount) +
                              " would breach the capital requirement of bank " + lender);
    if (ledger_.balance(from.cash_acct()) < amount)
        throw LedgerError(Err::InsufficientLiquidity,
                          "bank " + lender + " cannot stage " + std::to_string(amount));
    // Proceeds land in the borrower bank's cash holdings, not its reserves.
    EntryDraft settle{"loan " + std::to_string(amount) + " from " + lender + " to " +
                          borrower,
                      {{from.loans_acct(), Side::Debit, amount},
                       {from.reserves_acct(), Side::Credit, amount},
                       {from.cb_reserve_acct(), Side::Debit, amount},
                       {cb_assets_, Side::Credit, amount},
                       {to.cash_acct(), Side::Debit, amount},
                       {dst, Side::Credit, amount}}};
    LendResult result;
    result.entries = ledger_.post_batch({staging_draft(from, amount), std::move(settle)});
    if (loan_id.empty()) loan_id = from.next_loan_id();
    result.loan = LoanRecord{loan_id, borrower, amount, lender};
    from.register_loan(result.loan);
    ComplianceReport report = check_reserve_requirement(to);
    if (!report.reserve_ok) result.borrower_reserve_report = report;
    return result;
}

LendResult ClearingSystem::interbank_loan(const std::string& lender,
                                          const std::string& borrower, Money amount,
                                          std::string loan_id) {
    Bank& from = bank(lender);
    Bank& to = bank(borrower);
    if (amount <= 0)
        throw LedgerError(Err::ZeroAmountPosting, "loan amount must be positive");
    Money rwa_after = risk_weighted_assets(from, params_) +
                      params_.weight_loans.mul_round_half_up(amount);
    if (!capital_satisfied(ledger_.balance(from.capital_acct()), rwa_after,
                           params_.capital_ratio))
        throw LedgerError(Err::CapitalLimitExceeded,
                          "lending " + std::to_string(amount) +
                              " would breach the capital requirement of bank " + lender);
    if (ledger_.balance(from.cash_acct()) < amount)
        throw LedgerError(Err::InsufficientLiquidity,
                          "bank " + lender + " cannot stage " + std::to_string(amount));
    const std::string& liability = to.loan_liability_acct(lender);
    EntryDraft settle{"interbank loan " + std::to_string(amount) + " " + lender + " -> " +
                          borrower,
                      {{from.loans_acct(), Side::Debit, amount},
                       {from.reserves_acct(), Side::Credit, amount},
                       {from.cb_reserve_acct(), Side::Debit, amount},
                       {cb_assets_, Side::Credit, amount},
                       {to.cash_acct(), Side::Debit, amount},
                       {liability, Side::Credit, amount}}};
    LendResult result;
    result.entries = ledger_.post_batch({staging_draft(from, amount), std::move(settle)});
    if (loan_id.empty()) loan_id = from.next_loan_id();
    result.loan = LoanRecord{loan_id, borrower, amount, lender};
    from.register_loan(result.loan);
    ComplianceReport report = check_reserve_requirement(to);
    if (!report.reserve_ok) result.borrower_reserve_report = report;
    return result;
}

LendResult ClearingSystem::borrow_from_central_bank(const std::string& bank_id,
                                                    Money amount) {
    Bank& b = bank(bank_id);
    const std::string& cb_loan = cb_loan_acct(bank_id);
    const std::string& liability = b.loan_liability_acct(kCentralBankId);
    LendResult result;
    result.entries = {ledger_.post(
        "bank " + bank_id + " borrows " + std::to_string(amount) + " from central bank",
        {{cb_loan, Side::Debit, amount},
         {b.cb_reserve_acct(), Side::Credit, amount},
         {b.reserves_acct(), Side::Debit, amount},
         {liability, Side::Credit, amount}})};
    result.loan = LoanRecord{std::string(kCentralBankId) + ".L" +
                                 std::to_string(cb_loan_book_.size() + 1),
                             bank_id, amount, kCentralBankId};
    cb_loan_book_.push_back(result.loan);
    return result;
}

std::vector<JournalEntry> ClearingSystem::pay_interest_on_reserves(
    const std::string& bank_id, Money amount) {
    Bank& b = bank(bank_id);
    if (amount > 0 && ledger_.balance(cb_income_) < amount)
        throw LedgerError(Err::InsufficientCentralBankIncome,
                          "central bank income " +
                              std::to_string(ledger_.balance(cb_income_)) +
                              " cannot fund " + std::to_string(amount));
    // Funded by reclassifying central bank income into the reserve liability;
    // central bank assets are untouched.
    return {ledger_.post(
        "interest on reserves " + std::to_string(amount) + " to bank " + bank_id,
        {{cb_income_, Side::Debit, amount},
         {b.cb_reserve_acct(), Side::Credit, amount},
         {b.reserves_acct(), Side::Debit, amount},
         {b.interest_income_acct(), Side::Credit, amount}})};
}

}  // namespace bankledger
