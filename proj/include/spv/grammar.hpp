#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spv/graph.hpp"

namespace spv {

enum class MarkAnn : uint8_t { Never, Optional, Always };

struct Rule {
    enum Kind : uint8_t { Terminal, Series, Parallel } kind = Terminal;
    VarId head = 0;
    SymId sym = 0;       // Terminal
    VarId left = 0;      // Series / Parallel
    VarId right = 0;
    MarkAnn mark = MarkAnn::Never;  // Series only: middle-node marking
};

// Series-parallel graph grammar plus mark annotations.
struct Spgg {
    std::vector<std::string> variables;
    std::vector<std::string> alphabet;
    std::vector<Rule> rules;
    VarId start = 0;
    bool markSource = false;
    bool markSink = false;

    std::optional<VarId> varIndex(const std::string& name) const;
    std::optional<SymId> symIndex(const std::string& name) const;
};

// Body graph of a rule (fresh node ids 0..).
Graph ruleBody(const Rule& r);

struct DerivationStep {
    EdgeId edge = 0;
    uint32_t ruleIdx = 0;
};

// G'' = G[e -> body(rule)]; throws on label mismatch.
Graph applyRule(const Spgg& g, const Graph& cur, const DerivationStep& step);

struct GrammarDiagnostics {
    std::vector<std::string> messages;
    bool languageEmpty = false;
    bool empty() const { return messages.empty(); }
};
GrammarDiagnostics validateGrammar(const Spgg& g);

// Grammar lifted with a register-marking budget: variables are pairs (v, b)
// with b the number of marks the subderivation may still place. Rules split
// the budget across children; a marked series middle consumes one unit.
struct BudgetedRule {
    Rule::Kind kind;
    SymId sym = 0;
    VarId left = 0, right = 0;   // base-grammar variables
    uint8_t budLeft = 0, budRight = 0;
    bool markMiddle = false;
};
struct BudgetedSpgg {
    Spgg base;
    uint8_t k = 0;
    // expansions[(v, b)] for b in 0..k
    std::vector<std::vector<BudgetedRule>> table;
    std::vector<uint8_t> productive;  // per (v, b)
    // minimal number of forced marks needed to terminate from v (UINT32_MAX if none)
    std::vector<uint32_t> minForced;

    size_t idx(VarId v, uint8_t b) const { return size_t(v) * (k + 1) + b; }
    const std::vector<BudgetedRule>& expansions(VarId v, uint8_t b) const {
        return table[idx(v, b)];
    }
    bool isProductive(VarId v, uint8_t b) const { return productive[idx(v, b)] != 0; }
    // start budgets: marks available for the derivation body after source/sink flags
    std::vector<uint8_t> startBudgets() const;
    bool satisfiable() const;
};

// Throws std::invalid_argument("unsatisfiable budget") when no derivation fits k.
BudgetedSpgg liftGrammar(const Spgg& g, uint8_t k);

}  // namespace spv
