#include "spv/grammar.hpp"

#include <stdexcept>

namespace spv {

std::optional<VarId> Spgg::varIndex(const std::string& name) const {
    for (size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return static_cast<VarId>(i);
    return std::nullopt;
}
std::optional<SymId> Spgg::symIndex(const std::string& name) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<SymId>(i);
    return std::nullopt;
}

Graph ruleBody(const Rule& r) {
    Graph g;
    switch (r.kind) {
        case Rule::Terminal:
            g.nodeCount = 2;
            g.source = 0;
            g.sink = 1;
            g.addEdge(0, 1, false, r.sym);
            break;
        case Rule::Series:
            g.nodeCount = 3;
            g.source = 0;
            g.sink = 1;
            g.addEdge(0, 2, true, r.left);
            g.addEdge(2, 1, true, r.right);
            break;
        case Rule::Parallel:
            g.nodeCount = 2;
            g.source = 0;
            g.sink = 1;
            g.addEdge(0, 1, true, r.left);
            g.addEdge(0, 1, true, r.right);
            break;
    }
    return g;
}

Graph applyRule(const Spgg& g, const Graph& cur, const DerivationStep& step) {
    const Edge* e = cur.findEdge(step.edge);
    if (!e) throw std::invalid_argument("apply_rule: edge not present");
    const Rule& r = g.rules.at(step.ruleIdx);
    if (!e->isVar || e->label != r.head)
        throw std::invalid_argument("apply_rule: edge label does not match rule head");
    return edgeReplacement(cur, step.edge, ruleBody(r));
}

GrammarDiagnostics validateGrammar(const Spgg& g) {
    GrammarDiagnostics d;
    size_t nv = g.variables.size();

    // productivity: v productive iff some rule with all children productive
    std::vector<uint8_t> prod(nv, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            if (prod[r.head]) continue;
            bool ok = r.kind == Rule::Terminal ? true : (prod[r.left] && prod[r.right]);
            if (ok) {
                prod[r.head] = 1;
                changed = true;
            }
        }
    }
    // reachability from start
    std::vector<uint8_t> reach(nv, 0);
    std::vector<VarId> st{g.start};
    reach[g.start] = 1;
    while (!st.empty()) {
        VarId v = st.back();
        st.pop_back();
        for (const auto& r : g.rules) {
            if (r.head != v || r.kind == Rule::Terminal) continue;
            for (VarId c : {r.left, r.right})
                if (!reach[c]) {
                    reach[c] = 1;
                    st.push_back(c);
                }
        }
    }
    std::vector<uint8_t> hasRule(nv, 0);
    for (const auto& r : g.rules) hasRule[r.head] = 1;

    for (VarId v = 0; v < nv; ++v) {
        if (!reach[v]) d.messages.push_back("unreachable variable " + g.variables[v]);
        if (reach[v] && !hasRule[v])
            d.messages.push_back("variable " + g.variables[v] + " has no rule");
        if (reach[v] && hasRule[v] && !prod[v])
            d.messages.push_back("variable " + g.variables[v] +
                                 " cannot terminate (no terminal rule reachable)");
    }
    if (!prod[g.start]) {
        d.languageEmpty = true;
        d.messages.push_back("language empty");
    }
    return d;
}

BudgetedSpgg liftGrammar(const Spgg& g, uint8_t k) {
    BudgetedSpgg b;
    b.base = g;
    b.k = k;
    size_t nv = g.variables.size();
    b.table.resize(nv * (k + 1));
    b.minForced.assign(nv, UINT32_MAX);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
            uint32_t cost;
            if (r.kind == Rule::Terminal)
                cost = 0;
            else {
                if (b.minForced[r.left] == UINT32_MAX || b.minForced[r.right] == UINT32_MAX)
                    continue;
                cost = b.minForced[r.left] + b.minForced[r.right] +
                       (r.kind == Rule::Series && r.mark == MarkAnn::Always ? 1u : 0u);
            }
            if (cost < b.minForced[r.head]) {
                b.minForced[r.head] = cost;
                changed = true;
            }
        }
    }

    for (VarId v = 0; v < nv; ++v) {
        for (uint8_t bud = 0; bud <= k; ++bud) {
            auto& out = b.table[b.idx(v, bud)];
            for (const auto& r : g.rules) {
                if (r.head != v) continue;
                switch (r.kind) {
                    case Rule::Terminal:
                        out.push_back(BudgetedRule{Rule::Terminal, r.sym, 0, 0, 0, 0, false});
                        break;
                    case Rule::Series:
                        for (int markBit = 0; markBit <= 1; ++markBit) {
                            if (markBit && r.mark == MarkAnn::Never) continue;
                            if (!markBit && r.mark == MarkAnn::Always) continue;
                            if (markBit && bud == 0) continue;
                            uint8_t rem = static_cast<uint8_t>(bud - markBit);
                            for (uint8_t l = 0; l <= rem; ++l)
                                out.push_back(BudgetedRule{Rule::Series, 0, r.left, r.right, l,
                                                           static_cast<uint8_t>(rem - l),
                                                           markBit != 0});
                        }
                        break;
                    case Rule::Parallel:
                        for (uint8_t l = 0; l <= bud; ++l)
                            out.push_back(BudgetedRule{Rule::Parallel, 0, r.left, r.right, l,
                                                       static_cast<uint8_t>(bud - l), false});
                        break;
                }
            }
        }
    }

    // productivity per (v, b): budget is an upper bound, so (v, b) is productive
    // iff minForced[v] <= b
    b.productive.assign(nv * (k + 1), 0);
    for (VarId v = 0; v < nv; ++v)
        for (uint8_t bud = 0; bud <= k; ++bud)
            b.productive[b.idx(v, bud)] = b.minForced[v] != UINT32_MAX && b.minForced[v] <= bud;

    if (!b.satisfiable()) throw std::invalid_argument("unsatisfiable budget");
    return b;
}

std::vector<uint8_t> BudgetedSpgg::startBudgets() const {
    int reserved = (base.markSource ? 1 : 0) + (base.markSink ? 1 : 0);
    std::vector<uint8_t> out;
    if (reserved > k) return out;
    for (int bud = 0; bud + reserved <= k; ++bud)
        out.push_back(static_cast<uint8_t>(bud));
    return out;
}

bool BudgetedSpgg::satisfiable() const {
    for (uint8_t bud : startBudgets())
        if (isProductive(base.start, bud)) return true;
    return false;
}

}  // namespace spv
