#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spv/grammar.hpp"
#include "spv/graph.hpp"

namespace spv {

// Derivation tree: one node per applied rule. seriesCount / edgeCount /
// markCount are subtree totals (series rules add one graph node, terminal
// rules one edge).
struct DerivTree {
    Rule::Kind kind = Rule::Terminal;
    VarId head = 0;
    SymId sym = 0;
    bool markMiddle = false;
    uint32_t seriesCount = 0;
    uint32_t edgeCount = 1;
    uint32_t markCount = 0;
    std::shared_ptr<const DerivTree> left, right;
};

// Expand a derivation tree into the graph it derives. Marked middles (and the
// source/sink flags) become marked nodes; register ids are assigned 1.. in
// topological order (longest-path layer, ties by construction order).
MarkedGraph realizeTree(const Spgg& g, const std::shared_ptr<const DerivTree>& t);

// Isomorphism key (respecting marks and edge labels). Two derived graphs with
// equal keys are isomorphic; node classes are refined by layered longest-path
// distance plus neighborhood hashing, then permuted exhaustively within
// classes (graphs whose class sizes explode get a unique fallback key).
std::string canonicalKey(const MarkedGraph& g);

// All graphs derivable from g with at most maxNodes nodes, at most maxEdges
// edges (0 = default bound of 2*maxNodes; needed because parallel composition
// grows edges without growing nodes), and at most k marks, deduplicated up to
// isomorphism. Each result carries its derivation tree.
std::vector<MarkedGraph> enumerateGraphs(const BudgetedSpgg& g, uint32_t maxNodes,
                                         uint32_t maxEdges = 0);

}  // namespace spv
