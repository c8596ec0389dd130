#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace spv {

using NodeId = uint32_t;
using EdgeId = uint32_t;
using SymId = uint8_t;   // index into an alphabet table; labels are Σ ∪ V depending on context
using VarId = uint32_t;

constexpr SymId kNoSym = 0xff;

// A labeled edge. Edges carry a hidden unique id so that removing "one copy"
// from the multiset is well-defined when multiplicity > 1.
struct Edge {
    NodeId src = 0;
    NodeId trg = 0;
    bool isVar = false;  // label drawn from V instead of Σ
    uint32_t label = 0;  // SymId or VarId depending on isVar
    EdgeId id = 0;
};

// Series-parallel graph G = (N, E, n_b, n_e). Nodes are 0..nodeCount-1.
struct Graph {
    uint32_t nodeCount = 0;
    NodeId source = 0;
    NodeId sink = 0;
    std::vector<Edge> edges;
    EdgeId nextEdgeId = 0;

    EdgeId addEdge(NodeId s, NodeId t, bool isVar, uint32_t label) {
        edges.push_back(Edge{s, t, isVar, label, nextEdgeId});
        return nextEdgeId++;
    }
    const Edge* findEdge(EdgeId id) const {
        for (const auto& e : edges)
            if (e.id == id) return &e;
        return nullptr;
    }
    bool allTerminal() const {
        for (const auto& e : edges)
            if (e.isVar) return false;
        return true;
    }
};

// Initial graph of an SPGG: two nodes, one v0-labeled edge.
Graph initialGraph(VarId v0);

// G[e -> H] per the four-case multiset definition: one copy of e removed, H's
// interior nodes added fresh, H-edges touching H's source/sink re-targeted to
// the endpoints of e. Throws std::invalid_argument if e is absent or H has
// source == sink.
Graph edgeReplacement(const Graph& g, EdgeId e, const Graph& h);

// Structural checks for derived graphs: DAG, unique source (no incoming) and
// sink (no outgoing), every node on a source-to-sink path.
struct SpCheck {
    bool ok = true;
    std::string reason;
};
SpCheck checkSeriesParallel(const Graph& g);

// Marked graph: κ plus injective register ids drawn from {1..k} on marked nodes.
struct DerivTree;
struct MarkedGraph {
    Graph graph;
    std::vector<uint8_t> marked;  // κ, indexed by node
    std::vector<uint8_t> regId;   // 0 = no register
    std::shared_ptr<const DerivTree> derivation;  // set by the enumerator

    uint32_t markCount() const {
        uint32_t c = 0;
        for (auto m : marked) c += m;
        return c;
    }
};

// Symmetric closure: every forward edge (n,n',σ) paired with (n',n,(σ,-1)).
struct SymEdge {
    NodeId from = 0;
    NodeId to = 0;
    SymId sym = 0;
    int8_t dir = 1;
    EdgeId base = 0;  // id of the underlying forward edge
};
struct SymGraph {
    uint32_t nodeCount = 0;
    NodeId source = 0;
    NodeId sink = 0;
    std::vector<SymEdge> edges;
    std::vector<std::vector<uint32_t>> out;  // node -> indices into edges
    std::vector<uint8_t> marked;
    std::vector<uint8_t> regId;
};
SymGraph symmetricClosure(const MarkedGraph& g);

// Forward-edge projection; inverse of symmetricClosure up to edge ids.
Graph forwardRestriction(const SymGraph& g);

// DOT export (forward edges only; marked nodes labeled with their register id).
std::string toDot(const MarkedGraph& g, const std::vector<std::string>& alphabet);

}  // namespace spv
