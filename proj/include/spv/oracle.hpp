#pragma once

#include <optional>

#include "spv/enumerate.hpp"
#include "spv/semantics.hpp"

namespace spv {

struct OracleResult {
    MarkedGraph graph;
    Run run;
};

// Bounded explicit-state search on one fixed graph: BFS over configurations
// augmented with per-machine (last direction, reversals used ≤ r). The target
// property is checked at every configuration, including the initial one.
// Deterministic tie-break: machine index, then edge order, then transition
// order. Returns a shortest witness of at most maxSteps moves, if any.
std::optional<Run> oracleReachOnGraph(const Machine& mach, const Bounds& b, const MarkedGraph& g,
                                      const ConfigProperty& f, uint32_t maxSteps);

// Same search across every enumerated graph (canonical enumeration order);
// the first graph carrying a witness wins.
std::optional<OracleResult> oracleReach(const Machine& mach, const Bounds& b,
                                        const BudgetedSpgg& g, const ConfigProperty& f,
                                        uint32_t maxNodes, uint32_t maxSteps);

}  // namespace spv
