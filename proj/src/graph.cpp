#include "spv/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spv {

Graph initialGraph(VarId v0) {
    Graph g;
    g.nodeCount = 2;
    g.source = 0;
    g.sink = 1;
    g.addEdge(0, 1, true, v0);
    return g;
}

Graph edgeReplacement(const Graph& g, EdgeId eid, const Graph& h) {
    const Edge* e = g.findEdge(eid);
    if (!e) throw std::invalid_argument("edge_replacement: edge not present");
    if (h.source == h.sink)
        throw std::invalid_argument("edge_replacement: replacement source equals sink");

    Graph out;
    out.nodeCount = g.nodeCount;
    out.source = g.source;
    out.sink = g.sink;
    out.nextEdgeId = g.nextEdgeId;

    // fresh node numbering for H's interior nodes
    std::vector<NodeId> remap(h.nodeCount);
    for (NodeId n = 0; n < h.nodeCount; ++n) {
        if (n == h.source)
            remap[n] = e->src;
        else if (n == h.sink)
            remap[n] = e->trg;
        else
            remap[n] = out.nodeCount++;
    }
    for (const auto& ge : g.edges)
        if (ge.id != eid) out.edges.push_back(ge);
    for (const auto& he : h.edges)
        out.addEdge(remap[he.src], remap[he.trg], he.isVar, he.label);
    return out;
}

SpCheck checkSeriesParallel(const Graph& g) {
    SpCheck r;
    auto fail = [&](const std::string& why) {
        r.ok = false;
        r.reason = why;
        return r;
    };
    std::vector<int> indeg(g.nodeCount, 0), outdeg(g.nodeCount, 0);
    for (const auto& e : g.edges) {
        indeg[e.trg]++;
        outdeg[e.src]++;
    }
    for (NodeId n = 0; n < g.nodeCount; ++n) {
        if (indeg[n] == 0 && n != g.source) return fail("extra source node");
        if (outdeg[n] == 0 && n != g.sink) return fail("extra sink node");
    }
    if (g.nodeCount > 1 && indeg[g.source] != 0) return fail("source has incoming edges");
    if (g.nodeCount > 1 && outdeg[g.sink] != 0) return fail("sink has outgoing edges");

    // acyclicity via Kahn
    std::vector<int> d = indeg;
    std::vector<NodeId> q;
    for (NodeId n = 0; n < g.nodeCount; ++n)
        if (d[n] == 0) q.push_back(n);
    size_t seen = 0;
    std::vector<std::vector<NodeId>> out(g.nodeCount);
    for (const auto& e : g.edges) out[e.src].push_back(e.trg);
    while (seen < q.size()) {
        NodeId n = q[seen++];
        for (NodeId m : out[n])
            if (--d[m] == 0) q.push_back(m);
    }
    if (seen != g.nodeCount) return fail("cycle");

    // every node reachable from source and reaching sink
    std::vector<uint8_t> fromSrc(g.nodeCount, 0), toSink(g.nodeCount, 0);
    std::vector<NodeId> st{g.source};
    fromSrc[g.source] = 1;
    while (!st.empty()) {
        NodeId n = st.back();
        st.pop_back();
        for (NodeId m : out[n])
            if (!fromSrc[m]) {
                fromSrc[m] = 1;
                st.push_back(m);
            }
    }
    std::vector<std::vector<NodeId>> in(g.nodeCount);
    for (const auto& e : g.edges) in[e.trg].push_back(e.src);
    st = {g.sink};
    toSink[g.sink] = 1;
    while (!st.empty()) {
        NodeId n = st.back();
        st.pop_back();
        for (NodeId m : in[n])
            if (!toSink[m]) {
                toSink[m] = 1;
                st.push_back(m);
            }
    }
    for (NodeId n = 0; n < g.nodeCount; ++n)
        if (!fromSrc[n] || !toSink[n]) return fail("node off every source-sink path");
    return r;
}

SymGraph symmetricClosure(const MarkedGraph& mg) {
    SymGraph s;
    s.nodeCount = mg.graph.nodeCount;
    s.source = mg.graph.source;
    s.sink = mg.graph.sink;
    s.marked = mg.marked;
    s.regId = mg.regId;
    s.out.resize(s.nodeCount);
    for (const auto& e : mg.graph.edges) {
        if (e.isVar) throw std::invalid_argument("symmetric_closure: variable edge");
        s.edges.push_back(SymEdge{e.src, e.trg, static_cast<SymId>(e.label), 1, e.id});
        s.out[e.src].push_back(static_cast<uint32_t>(s.edges.size() - 1));
        s.edges.push_back(SymEdge{e.trg, e.src, static_cast<SymId>(e.label), -1, e.id});
        s.out[e.trg].push_back(static_cast<uint32_t>(s.edges.size() - 1));
    }
    return s;
}

Graph forwardRestriction(const SymGraph& s) {
    Graph g;
    g.nodeCount = s.nodeCount;
    g.source = s.source;
    g.sink = s.sink;
    EdgeId maxId = 0;
    for (const auto& e : s.edges)
        if (e.dir == 1) {
            g.edges.push_back(Edge{e.from, e.to, false, e.sym, e.base});
            maxId = std::max(maxId, e.base + 1);
        }
    g.nextEdgeId = maxId;
    return g;
}

std::string toDot(const MarkedGraph& g, const std::vector<std::string>& alphabet) {
    std::ostringstream os;
    os << "digraph G {\n  rankdir=LR;\n";
    for (NodeId n = 0; n < g.graph.nodeCount; ++n) {
        os << "  n" << n << " [label=\"";
        if (n == g.graph.source)
            os << "nb";
        else if (n == g.graph.sink)
            os << "ne";
        else
            os << n;
        if (n < g.marked.size() && g.marked[n]) os << " r" << int(g.regId[n]);
        os << "\"";
        if (n < g.marked.size() && g.marked[n]) os << " shape=box";
        os << "];\n";
    }
    for (const auto& e : g.graph.edges) {
        os << "  n" << e.src << " -> n" << e.trg << " [label=\"";
        if (e.isVar)
            os << "V" << e.label;
        else
            os << alphabet[e.label];
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace spv
