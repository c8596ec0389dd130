#pragma once

#include <functional>

#include "spv/grammar.hpp"
#include "spv/letters.hpp"
#include "spv/pda.hpp"

namespace spv {

// Stack variable of the trace PDA: a grammar variable annotated with the set
// of register ids still available for interior marked nodes, the set of rows
// whose paths run through the subgraph it derives, and the register ids at
// the subgraph's boundary nodes.
struct VarSym {
    VarId var = 0;
    uint16_t idset = 0;   // bit j-1 = register id j available
    uint16_t rowset = 0;  // bit i = row i (0-based) passes through
    uint8_t js = 0;       // register id at the subgraph source (0 = none)
    uint8_t je = 0;

    auto operator<=>(const VarSym&) const = default;
};

struct StackSym {
    enum Kind : uint8_t { Bottom, Col, Var } kind = Bottom;
    TraceLetter letter;  // Col
    VarSym v;            // Var

    auto operator<=>(const StackSym&) const = default;

    static StackSym bottom() { return StackSym{}; }
    static StackSym col(TraceLetter l) { return StackSym{Col, std::move(l), {}}; }
    static StackSym var(VarSym v) { return StackSym{Var, {}, v}; }
};

// All one-step replacements of a variable stack symbol (top first). An empty
// replacement erases a subgraph no row runs through; it is offered only when
// some derivation of the variable fits the available mark budget.
void forEachVarExpansion(const BudgetedSpgg& g, const Bounds& b, const VarSym& v,
                         const std::function<void(const std::vector<StackSym>&)>& yield);

// Boundary id choices for the whole word: register ids at the graph source
// and sink (obeying the grammar's mark-source/mark-sink flags) plus the ids
// left for interior nodes.
struct BoundaryChoice {
    uint8_t js = 0, je = 0;
    uint16_t idset = 0;
};
std::vector<BoundaryChoice> boundaryChoices(const BudgetedSpgg& g, const Bounds& b);

// PDA accepting the words that serialize t annotated traces in some marked
// graph the grammar derives: rows sharing an edge agree on one letter and a
// path index, shared-node letters are emitted at the word boundaries, at
// series junctions and around parallel forks, and register ids thread
// consistently through the derivation.
class TracePda : public Pda<TraceLetter, StackSym> {
  public:
    TracePda(const BudgetedSpgg& g, const Bounds& b) : g_(g), b_(b) {}

    std::vector<uint32_t> initials() const override { return {0}; }
    bool acceptingState(uint32_t q) const override { return q == 1; }
    StackSym bottom() const override { return StackSym::bottom(); }
    void expand(uint32_t q, const StackSym& top,
                const std::function<void(const std::optional<TraceLetter>&, uint32_t,
                                         const std::vector<StackSym>&)>& yield) const override;

    const BudgetedSpgg& grammar() const { return g_; }
    const Bounds& bounds() const { return b_; }

  private:
    const BudgetedSpgg& g_;
    Bounds b_;
};

}  // namespace spv
