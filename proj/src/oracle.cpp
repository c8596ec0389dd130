#include "spv/oracle.hpp"

#include <unordered_map>

namespace spv {

namespace {

struct SearchNode {
    Configuration config;
    std::vector<int8_t> lastDir;  // 0 = no move yet
    std::vector<uint8_t> rev;
    int32_t parent = -1;
    Move via;
    uint32_t depth = 0;
};

std::string keyOf(const SearchNode& n) {
    std::string k;
    auto put = [&](uint32_t v) { k.append(reinterpret_cast<const char*>(&v), 4); };
    for (auto p : n.config.pos) put(p);
    for (auto s : n.config.state) put(s);
    for (auto r : n.config.reg) k.push_back(char(r));
    for (auto d : n.lastDir) k.push_back(char(d));
    for (auto r : n.rev) k.push_back(char(r));
    return k;
}

}  // namespace

std::optional<Run> oracleReachOnGraph(const Machine& mach, const Bounds& b, const MarkedGraph& mg,
                                      const ConfigProperty& f, uint32_t maxSteps) {
    SymGraph g = symmetricClosure(mg);
    std::vector<SearchNode> nodes;
    std::unordered_map<std::string, uint32_t> seen;

    SearchNode init;
    init.config = initialConfiguration(g, b.m, mach.initial);
    init.lastDir.assign(b.m, 0);
    init.rev.assign(b.m, 0);
    nodes.push_back(init);
    seen.emplace(keyOf(init), 0);

    auto makeRun = [&](uint32_t idx) {
        Run run;
        std::vector<uint32_t> chain;
        for (int32_t i = static_cast<int32_t>(idx); i != -1; i = nodes[i].parent)
            chain.push_back(i);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            run.configs.push_back(nodes[*it].config);
            if (nodes[*it].parent != -1) run.moves.push_back(nodes[*it].via);
        }
        return run;
    };

    if (satisfies(init.config, f)) return makeRun(0);

    for (size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= maxSteps) continue;
        for (uint32_t i = 1; i <= b.m; ++i) {
            // copy: nodes may reallocate while we push successors
            SearchNode cur = nodes[head];
            for (const auto& s : successors(g, mach, cur.config, i)) {
                int8_t d = g.edges[s.edgeIdx].dir;
                SearchNode nxt;
                nxt.lastDir = cur.lastDir;
                nxt.rev = cur.rev;
                if (cur.lastDir[i - 1] != 0 && cur.lastDir[i - 1] != d) {
                    if (cur.rev[i - 1] >= b.r) continue;
                    nxt.rev[i - 1]++;
                }
                nxt.lastDir[i - 1] = d;
                nxt.config = s.config;
                nxt.parent = static_cast<int32_t>(head);
                nxt.via = Move{i, s.edgeIdx, s.transIdx};
                nxt.depth = cur.depth + 1;
                auto [it, fresh] = seen.emplace(keyOf(nxt), nodes.size());
                if (!fresh) continue;
                nodes.push_back(nxt);
                if (satisfies(nxt.config, f))
                    return makeRun(static_cast<uint32_t>(nodes.size() - 1));
            }
        }
    }
    return std::nullopt;
}

std::optional<OracleResult> oracleReach(const Machine& mach, const Bounds& b,
                                        const BudgetedSpgg& g, const ConfigProperty& f,
                                        uint32_t maxNodes, uint32_t maxSteps) {
    for (const auto& mg : enumerateGraphs(g, maxNodes)) {
        auto run = oracleReachOnGraph(mach, b, mg, f, maxSteps);
        if (run) return OracleResult{mg, std::move(*run)};
    }
    return std::nullopt;
}

}  // namespace spv
