#include "spv/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace spv {

namespace {

using TreePtr = std::shared_ptr<const DerivTree>;

void buildGraph(const DerivTree& t, Graph& g, std::vector<uint8_t>& marked, NodeId s, NodeId e) {
    switch (t.kind) {
        case Rule::Terminal:
            g.addEdge(s, e, false, t.sym);
            break;
        case Rule::Series: {
            NodeId m = g.nodeCount++;
            marked.push_back(t.markMiddle ? 1 : 0);
            buildGraph(*t.left, g, marked, s, m);
            buildGraph(*t.right, g, marked, m, e);
            break;
        }
        case Rule::Parallel:
            buildGraph(*t.left, g, marked, s, e);
            buildGraph(*t.right, g, marked, s, e);
            break;
    }
}

// longest-path distance from source (graph is a DAG by construction)
std::vector<uint32_t> layers(const Graph& g) {
    std::vector<uint32_t> layer(g.nodeCount, 0);
    std::vector<int> indeg(g.nodeCount, 0);
    std::vector<std::vector<NodeId>> out(g.nodeCount);
    for (const auto& e : g.edges) {
        indeg[e.trg]++;
        out[e.src].push_back(e.trg);
    }
    std::vector<NodeId> q;
    for (NodeId n = 0; n < g.nodeCount; ++n)
        if (indeg[n] == 0) q.push_back(n);
    size_t head = 0;
    while (head < q.size()) {
        NodeId n = q[head++];
        for (NodeId m : out[n]) {
            layer[m] = std::max(layer[m], layer[n] + 1);
            if (--indeg[m] == 0) q.push_back(m);
        }
    }
    return layer;
}

std::string adjacencyString(const MarkedGraph& mg, const std::vector<NodeId>& perm) {
    std::vector<std::tuple<NodeId, NodeId, uint32_t>> edges;
    edges.reserve(mg.graph.edges.size());
    for (const auto& e : mg.graph.edges) edges.emplace_back(perm[e.src], perm[e.trg], e.label);
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    os << mg.graph.nodeCount << '/' << perm[mg.graph.source] << '/' << perm[mg.graph.sink] << ';';
    std::vector<uint8_t> mk(mg.graph.nodeCount, 0);
    for (NodeId n = 0; n < mg.graph.nodeCount; ++n)
        if (n < mg.marked.size() && mg.marked[n]) mk[perm[n]] = 1;
    for (auto b : mk) os << int(b);
    os << ';';
    for (auto& [s, t, l] : edges) os << s << '-' << l << '-' << t << ',';
    return os.str();
}

}  // namespace

MarkedGraph realizeTree(const Spgg& spgg, const TreePtr& t) {
    MarkedGraph mg;
    mg.graph.nodeCount = 2;
    mg.graph.source = 0;
    mg.graph.sink = 1;
    mg.marked = {uint8_t(spgg.markSource ? 1 : 0), uint8_t(spgg.markSink ? 1 : 0)};
    buildGraph(*t, mg.graph, mg.marked, 0, 1);
    mg.regId.assign(mg.graph.nodeCount, 0);
    // register ids follow topological order: longest-path layer, then
    // construction order
    std::vector<uint32_t> layer = layers(mg.graph);
    std::vector<NodeId> markedNodes;
    for (NodeId n = 0; n < mg.graph.nodeCount; ++n)
        if (mg.marked[n]) markedNodes.push_back(n);
    std::sort(markedNodes.begin(), markedNodes.end(), [&](NodeId a, NodeId b) {
        return layer[a] != layer[b] ? layer[a] < layer[b] : a < b;
    });
    uint8_t next = 1;
    for (NodeId n : markedNodes) mg.regId[n] = next++;
    mg.derivation = t;
    return mg;
}

std::string canonicalKey(const MarkedGraph& mg) {
    uint32_t nc = mg.graph.nodeCount;
    std::vector<uint32_t> layer = layers(mg.graph);
    // initial class signature, then refinement by neighborhood hashing
    std::vector<uint64_t> sig(nc);
    std::vector<int> indeg(nc, 0), outdeg(nc, 0);
    for (const auto& e : mg.graph.edges) {
        indeg[e.trg]++;
        outdeg[e.src]++;
    }
    for (NodeId n = 0; n < nc; ++n) {
        uint8_t m = n < mg.marked.size() ? mg.marked[n] : 0;
        sig[n] = (uint64_t(layer[n]) << 32) ^ (uint64_t(indeg[n]) << 20) ^
                 (uint64_t(outdeg[n]) << 8) ^ m;
    }
    for (int iter = 0; iter < 4; ++iter) {
        std::vector<uint64_t> next = sig;
        for (NodeId n = 0; n < nc; ++n) {
            std::vector<uint64_t> nb;
            for (const auto& e : mg.graph.edges) {
                if (e.src == n) nb.push_back(sig[e.trg] * 31 + e.label * 7 + 1);
                if (e.trg == n) nb.push_back(sig[e.src] * 31 + e.label * 7 + 2);
            }
            std::sort(nb.begin(), nb.end());
            uint64_t h = sig[n];
            for (auto v : nb) h = h * 1000003u + v;
            next[n] = h;
        }
        sig = next;
    }
    // group nodes by signature; permute within groups
    std::vector<NodeId> order(nc);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return sig[a] != sig[b] ? sig[a] < sig[b] : a < b;
    });
    std::vector<std::pair<size_t, size_t>> groups;  // [begin, end) in order
    uint64_t permCount = 1;
    for (size_t i = 0; i < nc;) {
        size_t j = i;
        while (j < nc && sig[order[j]] == sig[order[i]]) ++j;
        groups.emplace_back(i, j);
        for (size_t f = 2; f <= j - i && permCount <= 10000; ++f) permCount *= f;
        i = j;
    }
    if (permCount > 10000) {
        // too symmetric to canonicalize exhaustively; fall back to a key that
        // never merges (the caller keeps such graphs as distinct)
        static uint64_t uniq = 0;
        return "!" + std::to_string(uniq++);
    }

    std::vector<NodeId> perm(nc);  // node -> canonical position
    std::string best;
    std::vector<std::vector<NodeId>> groupPerm(groups.size());
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        auto [b, e] = groups[gi];
        groupPerm[gi].assign(order.begin() + b, order.begin() + e);
    }
    // iterate the cartesian product of per-group permutations
    std::vector<std::vector<NodeId>> cur = groupPerm;
    while (true) {
        size_t pos = 0;
        for (size_t gi = 0; gi < cur.size(); ++gi)
            for (NodeId n : cur[gi]) perm[n] = static_cast<NodeId>(pos++);
        std::string s = adjacencyString(mg, perm);
        if (best.empty() || s < best) best = s;
        size_t gi = 0;
        while (gi < cur.size() && !std::next_permutation(cur[gi].begin(), cur[gi].end())) {
            cur[gi] = groupPerm[gi];
            ++gi;
        }
        if (gi == cur.size()) break;
    }
    return best;
}

std::vector<MarkedGraph> enumerateGraphs(const BudgetedSpgg& bg, uint32_t maxNodes,
                                         uint32_t maxEdges) {
    const Spgg& g = bg.base;
    std::vector<MarkedGraph> out;
    if (maxNodes < 2) return out;
    if (maxEdges == 0) maxEdges = 2 * maxNodes;
    uint32_t maxSeries = maxNodes - 2;
    int reserved = (g.markSource ? 1 : 0) + (g.markSink ? 1 : 0);
    if (reserved > bg.k) return out;
    uint32_t markBudget = bg.k - reserved;

    size_t nv = g.variables.size();
    // exact[v][e][s] = trees from v with exactly e edges and s series rules.
    // Children always have strictly fewer edges, so filling e in ascending
    // order sees complete child slots (this also keeps the parallel rules,
    // which add edges but no nodes, from recursing forever).
    std::vector<std::vector<std::vector<std::vector<TreePtr>>>> tab(
        nv, std::vector<std::vector<std::vector<TreePtr>>>(
                maxEdges + 1, std::vector<std::vector<TreePtr>>(maxSeries + 1)));

    for (uint32_t e = 1; e <= maxEdges; ++e) {
        for (const auto& r : g.rules) {
            switch (r.kind) {
                case Rule::Terminal:
                    if (e == 1) {
                        auto t = std::make_shared<DerivTree>();
                        t->kind = Rule::Terminal;
                        t->head = r.head;
                        t->sym = r.sym;
                        tab[r.head][1][0].push_back(t);
                    }
                    break;
                case Rule::Series:
                    if (e < 2) break;
                    for (uint32_t el = 1; el <= e - 1; ++el)
                        for (uint32_t sl = 0; sl <= maxSeries; ++sl)
                            for (const auto& lt : tab[r.left][el][sl])
                                for (uint32_t sr = 0; sl + sr + 1 <= maxSeries; ++sr)
                                    for (const auto& rt : tab[r.right][e - el][sr])
                                        for (int mb = 0; mb <= 1; ++mb) {
                                            if (mb && r.mark == MarkAnn::Never) continue;
                                            if (!mb && r.mark == MarkAnn::Always) continue;
                                            uint32_t marks = lt->markCount + rt->markCount + mb;
                                            if (marks > markBudget) continue;
                                            auto t = std::make_shared<DerivTree>();
                                            t->kind = Rule::Series;
                                            t->head = r.head;
                                            t->markMiddle = mb != 0;
                                            t->seriesCount = sl + sr + 1;
                                            t->edgeCount = e;
                                            t->markCount = marks;
                                            t->left = lt;
                                            t->right = rt;
                                            tab[r.head][e][sl + sr + 1].push_back(t);
                                        }
                    break;
                case Rule::Parallel:
                    if (e < 2) break;
                    for (uint32_t el = 1; el <= e - 1; ++el)
                        for (uint32_t sl = 0; sl <= maxSeries; ++sl)
                            for (const auto& lt : tab[r.left][el][sl])
                                for (uint32_t sr = 0; sl + sr <= maxSeries; ++sr)
                                    for (const auto& rt : tab[r.right][e - el][sr]) {
                                        uint32_t marks = lt->markCount + rt->markCount;
                                        if (marks > markBudget) continue;
                                        auto t = std::make_shared<DerivTree>();
                                        t->kind = Rule::Parallel;
                                        t->head = r.head;
                                        t->seriesCount = sl + sr;
                                        t->edgeCount = e;
                                        t->markCount = marks;
                                        t->left = lt;
                                        t->right = rt;
                                        tab[r.head][e][sl + sr].push_back(t);
                                    }
                    break;
            }
        }
    }

    std::unordered_set<std::string> seen;
    for (uint32_t e = 1; e <= maxEdges; ++e)
        for (uint32_t s = 0; s <= maxSeries; ++s)
            for (const auto& t : tab[g.start][e][s]) {
                MarkedGraph mg = realizeTree(g, t);
                if (seen.insert(canonicalKey(mg)).second) out.push_back(std::move(mg));
            }
    return out;
}

}  // namespace spv
