#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bankledger/clearing.hpp"
#include "bankledger/regulation.hpp"

namespace bankledger {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct RunError : std::runtime_error {
    RunError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

struct AssertionError : RunError {
    using RunError::RunError;
};

struct Instruction {
    std::string verb;
    std::map<std::string, std::string> args;
    int line = 0;
};

struct GenesisBank {
    std::string id;
    Money loans = 0;
    Money cash = 0;
    Money reserves = 0;
    Money capital = 0;
};

struct GenesisAccount {
    std::string id;
    std::string bank;
    Money balance = 0;
    bool reservable = true;
};

struct Scenario {
    RegulatoryParams params;
    std::vector<GenesisBank> banks;
    std::vector<GenesisAccount> accounts;
    Money cb_assets = 0;
    Money cb_income = 0;
    bool cb_declared = false;  // when false, cb_assets defaults to total reserves
    std::vector<Instruction> instructions;
};

/// Parses and validates a scenario file: verbs, argument keys, entity
/// references resolvable at parse time, and the genesis accounting identity
/// per entity.
Scenario parse_scenario(const std::string& text);

/// Builds the clearing system described by a scenario's genesis block.
std::unique_ptr<ClearingSystem> build_genesis(const Scenario& scenario);

/// Renders the genesis block back to scenario-file text.
std::string render_genesis(const Scenario& scenario);

/// Deterministic plain-text snapshot of every entity's balance sheet.
std::string render_snapshot(const ClearingSystem& clearing);

struct RunResult {
    int instructions_executed = 0;
    int snapshots_emitted = 0;
    std::vector<std::string> warnings;  // e.g. advisory reserve shortfalls
};

/// Receives each emitted snapshot: (name, rendered text).
using SnapshotSink = std::function<void(const std::string&, const std::string&)>;

/// Called after every successfully executed instruction; used by invariant
/// test suites.
using InstructionHook = std::function<void(const ClearingSystem&, const Instruction&)>;

RunResult run_scenario(const Scenario& scenario, const SnapshotSink& sink,
                       const InstructionHook& hook = nullptr);

/// Empty string iff the snapshots are byte-identical; otherwise one line per
/// differing entity/account. Throws RunError("MalformedSnapshot...") on
/// unparseable input.
std::string diff_snapshot(const std::string& expected, const std::string& actual);

}  // namespace bankledger
