#include "bankledger/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace bankledger {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

Money parse_amount(const std::string& text, int line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() ||
        value > std::uint64_t(std::numeric_limits<Money>::max()))
        throw ParseError(line, "not an unsigned integer amount: " + text);
    return Money(value);
}

// key=value pairs after the leading tokens.
std::map<std::string, std::string> parse_args(const std::vector<std::string>& tokens,
                                              size_t start, int line) {
    std::map<std::string, std::string> args;
    for (size_t i = start; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == tokens[i].size())
            throw ParseError(line, "expected key=value, got: " + tokens[i]);
        std::string key = tokens[i].substr(0, eq);
        if (args.count(key)) throw ParseError(line, "duplicate key: " + key);
        args[key] = tokens[i].substr(eq + 1);
    }
    return args;
}

struct VerbSpec {
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

const std::map<std::string, VerbSpec>& verb_table() {
    static const std::map<std::string, VerbSpec> table = {
        {"deposit_cash", {{"bank", "customer", "amount"}, {}}},
        {"transfer", {{"from", "to", "amount"}, {"route"}}},
        {"lend", {{"bank", "customer", "amount"}, {"id"}}},
        {"interbank_loan", {{"lender", "borrower", "amount"}, {"id"}}},
        {"repay_principal", {{"loan", "customer", "amount"}, {}}},
        {"pay_interest", {{"loan", "customer", "amount"}, {}}},
        {"provision", {{"bank", "amount"}, {}}},
        {"write_off", {{"loan", "amount"}, {}}},
        {"sell_stock", {{"issuer", "buyer", "amount"}, {}}},
        {"cb_borrow", {{"bank", "amount"}, {}}},
        {"cb_interest", {{"bank", "amount"}, {}}},
        {"move_to_reserves", {{"bank", "amount"}, {}}},
        {"snapshot", {{}, {"name"}}},
        {"assert", {{"account", "value"}, {"bank"}}},
    };
    return table;
}

void check_keys(const Instruction& ins, const VerbSpec& spec) {
    for (const auto& key : spec.required)
        if (!ins.args.count(key))
            throw ParseError(ins.line, ins.verb + " requires " + key + "=");
    for (const auto& [key, value] : ins.args) {
        bool known = std::count(spec.required.begin(), spec.required.end(), key) ||
                     std::count(spec.optional.begin(), spec.optional.end(), key);
        if (!known) throw ParseError(ins.line, "unknown key for " + ins.verb + ": " + key);
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario scenario;
    std::set<std::string> bank_ids;
    std::map<std::string, std::string> customer_bank;
    bool instructions_started = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        auto tokens = tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0];

        if (head == "param" || head == "bank" || head == "account" ||
            head == "centralbank") {
            if (instructions_started)
                throw ParseError(line_no, "genesis line after first instruction");
        }

        if (head == "param") {
            auto args = parse_args(tokens, 1, line_no);
            for (const auto& [key, value] : args) {
                try {
                    if (key == "reserve_ratio")
                        scenario.params.reserve_ratio = Ratio::parse(value);
                    else if (key == "capital_ratio")
                        scenario.params.capital_ratio = Ratio::parse(value);
                    else
                        throw ParseError(line_no, "unknown param: " + key);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(line_no, e.what());
                }
            }
        } else if (head == "bank") {
            if (tokens.size() < 2) throw ParseError(line_no, "bank needs an id");
            GenesisBank bank;
            bank.id = tokens[1];
            if (!bank_ids.insert(bank.id).second)
                throw ParseError(line_no, "duplicate bank: " + bank.id);
            auto args = parse_args(tokens, 2, line_no);
            for (const auto& [key, value] : args) {
                if (key == "loans") bank.loans = parse_amount(value, line_no);
                else if (key == "cash") bank.cash = parse_amount(value, line_no);
                else if (key == "reserves") bank.reserves = parse_amount(value, line_no);
                else if (key == "capital") bank.capital = parse_amount(value, line_no);
                else throw ParseError(line_no, "unknown bank key: " + key);
            }
            scenario.banks.push_back(bank);
        } else if (head == "account") {
            if (tokens.size() < 2) throw ParseError(line_no, "account needs an id");
            GenesisAccount acct;
            acct.id = tokens[1];
            if (customer_bank.count(acct.id))
                throw ParseError(line_no, "duplicate account: " + acct.id);
            auto args = parse_args(tokens, 2, line_no);
            for (const auto& [key, value] : args) {
                if (key == "bank") acct.bank = value;
                else if (key == "balance") acct.balance = parse_amount(value, line_no);
                else if (key == "reservable") {
                    if (value != "true" && value != "false")
                        throw ParseError(line_no, "reservable must be true or false");
                    acct.reservable = value == "true";
                } else throw ParseError(line_no, "unknown account key: " + key);
            }
            if (acct.bank.empty()) throw ParseError(line_no, "account requires bank=");
            if (!bank_ids.count(acct.bank))
                throw ParseError(line_no, "unknown bank for account " + acct.id + ": " +
                                              acct.bank);
            customer_bank[acct.id] = acct.bank;
            scenario.accounts.push_back(acct);
        } else if (head == "centralbank") {
            scenario.cb_declared = true;
            auto args = parse_args(tokens, 1, line_no);
            for (const auto& [key, value] : args) {
                if (key == "assets") scenario.cb_assets = parse_amount(value, line_no);
                else if (key == "income") scenario.cb_income = parse_amount(value, line_no);
                else throw ParseError(line_no, "unknown centralbank key: " + key);
            }
        } else {
            auto it = verb_table().find(head);
            if (it == verb_table().end())
                throw ParseError(line_no, "unknown verb: " + head);
            instructions_started = true;
            Instruction ins;
            ins.verb = head;
            ins.line = line_no;
            ins.args = parse_args(tokens, 1, line_no);
            check_keys(ins, it->second);
            // Amount/value syntax and entity references checked at parse time.
            for (const char* key : {"amount", "value"})
                if (ins.args.count(key)) parse_amount(ins.args.at(key), line_no);
            for (const char* key : {"bank", "lender", "borrower", "issuer"}) {
                if (!ins.args.count(key)) continue;
                const std::string& id = ins.args.at(key);
                if (head == "assert" && key == std::string("bank")) continue;
                if (!bank_ids.count(id))
                    throw ParseError(line_no, "unknown bank: " + id);
            }
            for (const char* key : {"customer", "from", "to", "buyer"}) {
                if (!ins.args.count(key)) continue;
                const std::string& id = ins.args.at(key);
                if (!customer_bank.count(id))
                    throw ParseError(line_no, "unknown customer account: " + id);
            }
            if (ins.args.count("route") && ins.args.at("route") != "clearing")
                throw ParseError(line_no, "route must be 'clearing'");
            scenario.instructions.push_back(std::move(ins));
        }
    }

    // Genesis accounting identity per entity.
    for (const auto& bank : scenario.banks) {
        Money deposits = 0;
        for (const auto& acct : scenario.accounts)
            if (acct.bank == bank.id) deposits += acct.balance;
        Money assets = bank.loans + bank.cash + bank.reserves;
        Money liabeq = deposits + bank.capital;
        if (assets != liabeq)
            throw ParseError(0, "UnbalancedGenesis: bank " + bank.id + " assets " +
                                    std::to_string(assets) + " vs liabilities+equity " +
                                    std::to_string(liabeq) + " (delta " +
                                    std::to_string(assets - liabeq) + ")");
    }
    Money total_reserves = 0;
    for (const auto& bank : scenario.banks) total_reserves += bank.reserves;
    if (!scenario.cb_declared) {
        scenario.cb_assets = total_reserves;
        scenario.cb_income = 0;
    } else if (scenario.cb_assets != total_reserves + scenario.cb_income) {
        throw ParseError(0, "UnbalancedGenesis: central bank assets " +
                                std::to_string(scenario.cb_assets) +
                                " vs liabilities " +
                                std::to_string(total_reserves + scenario.cb_income) +
                                " (delta " +
                                std::to_string(scenario.cb_assets - total_reserves -
                                               scenario.cb_income) +
                                ")");
    }
    return scenario;
}

std::unique_ptr<ClearingSystem> build_genesis(const Scenario& scenario) {
    auto clearing = std::make_unique<ClearingSystem>(scenario.params, scenario.cb_assets,
                                                     scenario.cb_income);
    for (const auto& bank : scenario.banks)
        clearing->add_bank(bank.id, bank.loans, bank.cash, bank.reserves, bank.capital);
    for (const auto& acct : scenario.accounts) {
        clearing->bank(acct.bank).add_customer(acct.id, acct.balance);
        clearing->ledger().account_mut(acct.id).reservable = acct.reservable;
    }
    return clearing;
}

std::string render_genesis(const Scenario& scenario) {
    std::ostringstream out;
    out << "param reserve_ratio=" << scenario.params.reserve_ratio.str() << "\n";
    out << "param capital_ratio=" << scenario.params.capital_ratio.str() << "\n";
    for (const auto& bank : scenario.banks)
        out << "bank " << bank.id << " loans=" << bank.loans << " cash=" << bank.cash
            << " reserves=" << bank.reserves << " capital=" << bank.capital << "\n";
    for (const auto& acct : scenario.accounts) {
        out << "account " << acct.id << " bank=" << acct.bank
            << " balance=" << acct.balance;
        if (!acct.reservable) out << " reservable=false";
        out << "\n";
    }
    out << "centralbank assets=" << scenario.cb_assets << " income=" << scenario.cb_income
        << "\n";
    return out.str();
}

std::string render_snapshot(const ClearingSystem& clearing) {
    const GeneralLedger& lg = clearing.ledger();
    std::ostringstream out;
    for (const auto& [id, bank] : clearing.banks()) {
        BalanceSheet sheet = lg.balance_sheet(id);
        out << "entity " << id << "\n";
        out << "loans " << lg.balance(bank->loans_acct()) << "\n";
        out << "loss_provision (" << lg.balance(bank->loss_provision_acct()) << ")\n";
        out << "reserves " << lg.balance(bank->reserves_acct()) << "\n";
        out << "cash " << lg.balance(bank->cash_acct()) << "\n";
        for (const auto& [cust, acct] : bank->deposit_accts())
            out << "deposit " << cust << " " << lg.balance(acct) << "\n";
        out << "interest_income " << lg.balance(bank->interest_income_acct()) << "\n";
        for (const auto& [lender, acct] : bank->loan_liability_accts())
            out << "loan_from " << lender << " " << lg.balance(acct) << "\n";
        out << "capital " << lg.balance(bank->capital_acct()) << "\n";
        out << "total " << sheet.total_assets << " " << sheet.total_liabilities_and_equity
            << "\n";
    }
    BalanceSheet cb = lg.balance_sheet(ClearingSystem::kCentralBankId);
    out << "entity " << ClearingSystem::kCentralBankId << "\n";
    out << "assets " << lg.balance(clearing.cb_assets_acct()) << "\n";
    for (const auto& [acct_id, acct] : lg.accounts())
        if (acct.owner == ClearingSystem::kCentralBankId &&
            acct_id.rfind("CB.loan_to.", 0) == 0)
            out << "loan_to " << acct_id.substr(11) << " " << acct.balance << "\n";
    for (const auto& [id, bank] : clearing.banks())
        out << "reserves " << id << " " << lg.balance(clearing.cb_reserve_acct(id)) << "\n";
    out << "income " << lg.balance(clearing.cb_income_acct()) << "\n";
    out << "total " << cb.total_assets << " " << cb.total_liabilities_and_equity << "\n";
    return out.str();
}

namespace {

// Resolves an assert target to an account id.
std::string resolve_assert_account(ClearingSystem& clearing,
                                   const std::map<std::string, std::string>& customer_bank,
                                   const Instruction& ins) {
    const std::string& name = ins.args.at("account");
    auto bank_arg = ins.args.find("bank");
    if (bank_arg != ins.args.end() &&
        bank_arg->second == ClearingSystem::kCentralBankId) {
        if (name == "assets") return clearing.cb_assets_acct();
        if (name == "income") return clearing.cb_income_acct();
        if (name.rfind("reserves.", 0) == 0)
            return clearing.cb_reserve_acct(name.substr(9));
        if (name.rfind("loan_to.", 0) == 0)
            return "CB." + name;
        throw RunError(ins.line, "unknown central bank account: " + name);
    }
    if (customer_bank.count(name)) return name;
    if (bank_arg == ins.args.end())
        throw RunError(ins.line, "assert on " + name + " requires bank=");
    const std::string& bank_id = bank_arg->second;
    clearing.bank(bank_id);  // validates
    static const std::set<std::string> roles = {"loans", "cash", "reserves", "capital",
                                                "interest_income", "loss_provision"};
    if (roles.count(name)) return bank_id + "." + name;
    if (name.rfind("loan_from.", 0) == 0) return bank_id + "." + name;
    throw RunError(ins.line, "unknown account role: " + name);
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const SnapshotSink& sink,
                       const InstructionHook& hook) {
    auto clearing = build_genesis(scenario);
    std::map<std::string, std::string> customer_bank;
    for (const auto& acct : scenario.accounts) customer_bank[acct.id] = acct.bank;

    RunResult result;
    int snapshot_counter = 0;
    for (const auto& ins : scenario.instructions) {
        try {
            Money amount = ins.args.count("amount")
                               ? parse_amount(ins.args.at("amount"), ins.line)
                               : 0;
            if (ins.verb == "deposit_cash") {
                clearing->bank(ins.args.at("bank"))
                    .deposit_cash(ins.args.at("customer"), amount);
            } else if (ins.verb == "transfer") {
                const std::string& from = ins.args.at("from");
                const std::string& to = ins.args.at("to");
                bool force = ins.args.count("route") != 0;
                clearing->interbank_transfer(customer_bank.at(from), from,
                                             customer_bank.at(to), to, amount, force);
            } else if (ins.verb == "lend") {
                const std::string& bank_id = ins.args.at("bank");
                const std::string& customer = ins.args.at("customer");
                std::string loan_id =
                    ins.args.count("id") ? ins.args.at("id") : std::string();
                LendResult lent;
                if (customer_bank.at(customer) == bank_id)
                    lent = clearing->bank(bank_id).lend_own_customer(customer, amount,
                                                                     loan_id);
                else
                    lent = clearing->lend_other_bank_customer(
                        bank_id, customer_bank.at(customer), customer, amount, loan_id);
                if (lent.borrower_reserve_report) {
                    const auto& rep = *lent.borrower_reserve_report;
                    result.warnings.push_back(
                        "line " + std::to_string(ins.line) + ": bank " + rep.bank +
                        " under-reserved: required " +
                        std::to_string(rep.required_reserves) + " actual " +
                        std::to_string(rep.actual_reserves));
                }
            } else if (ins.verb == "interbank_loan") {
                auto lent = clearing->interbank_loan(
                    ins.args.at("lender"), ins.args.at("borrower"), amount,
                    ins.args.count("id") ? ins.args.at("id") : std::string());
                if (lent.borrower_reserve_report) {
                    const auto& rep = *lent.borrower_reserve_report;
                    result.warnings.push_back(
                        "line " + std::to_string(ins.line) + ": bank " + rep.bank +
                        " under-reserved: required " +
                        std::to_string(rep.required_reserves) + " actual " +
                        std::to_string(rep.actual_reserves));
                }
            } else if (ins.verb == "repay_principal" || ins.verb == "pay_interest") {
                const std::string& loan_id = ins.args.at("loan");
                Bank* bank = clearing->find_loan_bank(loan_id);
                if (!bank)
                    throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
                if (ins.verb == "repay_principal")
                    bank->repay_principal(loan_id, ins.args.at("customer"), amount);
                else
                    bank->pay_loan_interest(loan_id, ins.args.at("customer"), amount);
            } else if (ins.verb == "provision") {
                clearing->bank(ins.args.at("bank")).provision_for_loss(amount);
            } else if (ins.verb == "write_off") {
                const std::string& loan_id = ins.args.at("loan");
                Bank* bank = clearing->find_loan_bank(loan_id);
                if (!bank)
                    throw LedgerError(Err::UnknownLoan, "unknown loan: " + loan_id);
                bank->write_off_loan(loan_id, amount);
            } else if (ins.verb == "sell_stock") {
                const std::string& buyer = ins.args.at("buyer");
                sell_stock(clearing->bank(ins.args.at("issuer")),
                           clearing->bank(customer_bank.at(buyer)), buyer, amount);
            } else if (ins.verb == "cb_borrow") {
                clearing->borrow_from_central_bank(ins.args.at("bank"), amount);
            } else if (ins.verb == "cb_interest") {
                clearing->pay_interest_on_reserves(ins.args.at("bank"), amount);
            } else if (ins.verb == "move_to_reserves") {
                clearing->move_cash_to_reserves(ins.args.at("bank"), amount);
            } else if (ins.verb == "snapshot") {
                ++snapshot_counter;
                std::string name;
                if (ins.args.count("name")) {
                    name = ins.args.at("name");
                } else {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "%03d", snapshot_counter);
                    name = std::string("snap") + buf;
                }
                if (sink) sink(name, render_snapshot(*clearing));
                ++result.snapshots_emitted;
            } else if (ins.verb == "assert") {
                std::string acct = resolve_assert_account(*clearing, customer_bank, ins);
                Money expected = parse_amount(ins.args.at("value"), ins.line);
                Money actual = clearing->ledger().balance(acct);
                if (actual != expected)
                    throw AssertionError(ins.line, "assert failed: " + acct +
                                                       " expected " +
                                                       std::to_string(expected) +
                                                       " actual " +
                                                       std::to_string(actual));
            }
        } catch (const LedgerError& e) {
            throw RunError(ins.line,
                           std::string(to_string(e.code())) + ": " + e.what());
        }
        ++result.instructions_executed;
        if (hook) hook(*clearing, ins);
    }
    return result;
}

namespace {

using SnapshotMap = std::vector<std::pair<std::string, std::string>>;  // key -> value

SnapshotMap parse_snapshot(const std::string& text) {
    SnapshotMap entries;
    std::istringstream in(text);
    std::string line;
    std::string entity;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "entity") {
            if (tokens.size() != 2)
                throw RunError(n, "MalformedSnapshot: bad entity line: " + line);
            entity = tokens[1];
            continue;
        }
        if (entity.empty() || tokens.size() < 2)
            throw RunError(n, "MalformedSnapshot: unexpected line: " + line);
        std::string key = entity;
        for (size_t i = 0; i + 1 < tokens.size(); ++i) key += " " + tokens[i];
        entries.emplace_back(key, tokens.back());
    }
    return entries;
}

}  // namespace

std::string diff_snapshot(const std::string& expected, const std::string& actual) {
    if (expected == actual) return "";
    SnapshotMap exp = parse_snapshot(expected);
    SnapshotMap act = parse_snapshot(actual);
    std::map<std::string, std::string> exp_map(exp.begin(), exp.end());
    std::map<std::string, std::string> act_map(act.begin(), act.end());
    std::ostringstream out;
    for (const auto& [key, value] : exp_map) {
        auto it = act_map.find(key);
        if (it == act_map.end())
            out << key << ": expected " << value << ", missing\n";
        else if (it->second != value)
            out << key << ": expected " << value << " actual " << it->second << "\n";
    }
    for (const auto& [key, value] : act_map)
        if (!exp_map.count(key)) out << key << ": unexpected " << value << "\n";
    if (out.str().empty())
        out << "snapshots differ in formatting only\n";
    return out.str();
}

}  // namespace bankledger
