#include "spv/semantics.hpp"

#include <algorithm>
#include <map>

namespace spv {

uint32_t ConfigProperty::addAtom(std::vector<StateId> s) {
    std::sort(s.begin(), s.end());
    nodes.push_back(Node{Node::Atom, std::move(s), 0, 0});
    root = static_cast<uint32_t>(nodes.size() - 1);
    return root;
}
uint32_t ConfigProperty::addOp(Node::Kind k, uint32_t l, uint32_t r) {
    nodes.push_back(Node{k, {}, l, r});
    root = static_cast<uint32_t>(nodes.size() - 1);
    return root;
}
ConfigProperty ConfigProperty::atom(std::vector<StateId> s) {
    ConfigProperty f;
    f.addAtom(std::move(s));
    return f;
}

Configuration initialConfiguration(const SymGraph& g, uint32_t m, StateId q0) {
    Configuration c;
    c.pos.assign(m, g.source);
    c.state.assign(m, q0);
    c.reg.assign(g.nodeCount, 0);
    return c;
}

std::vector<Successor> successors(const SymGraph& g, const Machine& mach, const Configuration& c,
                                  uint32_t i) {
    std::vector<Successor> out;
    NodeId n = c.pos[i - 1];
    StateId q = c.state[i - 1];
    bool marked = n < g.marked.size() && g.marked[n];
    uint8_t beta = c.reg[n];
    for (uint32_t ei : g.out[n]) {
        const SymEdge& e = g.edges[ei];
        for (uint32_t ti = 0; ti < mach.transitions.size(); ++ti) {
            const Transition& tr = mach.transitions[ti];
            if (tr.q != q || tr.sym != e.sym || tr.dir != e.dir) continue;
            if (marked) {
                if (tr.read != beta) continue;
            } else {
                if (tr.read != 0 || tr.write != 0) continue;
            }
            Successor s;
            s.config = c;
            s.config.pos[i - 1] = e.to;
            s.config.state[i - 1] = tr.q2;
            if (marked) s.config.reg[n] = tr.write;
            s.edgeIdx = ei;
            s.transIdx = ti;
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

bool atomHolds(const Configuration& c, const std::vector<StateId>& atom) {
    // group machine states by node, then multiset containment per node
    std::map<NodeId, std::vector<StateId>> byNode;
    for (size_t i = 0; i < c.pos.size(); ++i) byNode[c.pos[i]].push_back(c.state[i]);
    for (auto& [n, states] : byNode) {
        std::sort(states.begin(), states.end());
        if (std::includes(states.begin(), states.end(), atom.begin(), atom.end())) return true;
    }
    return false;
}

bool evalNode(const Configuration& c, const ConfigProperty& f, uint32_t idx) {
    const auto& n = f.nodes[idx];
    switch (n.kind) {
        case ConfigProperty::Node::Atom:
            return atomHolds(c, n.atom);
        case ConfigProperty::Node::And:
            return evalNode(c, f, n.left) && evalNode(c, f, n.right);
        case ConfigProperty::Node::Or:
            return evalNode(c, f, n.left) || evalNode(c, f, n.right);
    }
    return false;
}

}  // namespace

bool satisfies(const Configuration& c, const ConfigProperty& f) {
    if (f.nodes.empty()) return false;
    return evalNode(c, f, f.root);
}

std::vector<uint32_t> reversalCounts(const SymGraph& g, const Machine& mach, const Run& run) {
    (void)mach;
    size_t m = run.configs.empty() ? 0 : run.configs.front().pos.size();
    std::vector<uint32_t> counts(m, 0);
    std::vector<int8_t> last(m, 0);  // 0 = no move yet
    for (const auto& mv : run.moves) {
        int8_t d = g.edges[mv.edgeIdx].dir;
        auto& l = last[mv.machine - 1];
        if (l != 0 && l != d) counts[mv.machine - 1]++;
        l = d;
    }
    return counts;
}

ReadWriteSeq extractRwSequence(const SymGraph& g, const Machine& mach, const Run& run) {
    ReadWriteSeq out;
    for (const auto& mv : run.moves) {
        NodeId n = g.edges[mv.edgeIdx].from;
        const Transition& tr = mach.transitions[mv.transIdx];
        if (n < g.marked.size() && g.marked[n])
            out.push_back(RwEntry{g.regId[n], tr.read, tr.write});
        else
            out.push_back(RwEntry{0, 0, 0});
    }
    return out;
}

bool rwValid(const ReadWriteSeq& s, const std::vector<uint8_t>& beta0) {
    std::map<uint8_t, uint8_t> val;
    for (const auto& e : s) {
        if (e.regId == 0) continue;
        auto it = val.find(e.regId);
        uint8_t cur = it != val.end() ? it->second
                                      : (e.regId < beta0.size() ? beta0[e.regId] : 0);
        if (e.read != cur) return false;
        val[e.regId] = e.written;
    }
    return true;
}

bool replayRun(const SymGraph& g, const Machine& mach, const Run& run) {
    if (run.configs.size() != run.moves.size() + 1) return false;
    for (size_t i = 0; i < run.moves.size(); ++i) {
        const Move& mv = run.moves[i];
        if (mv.machine < 1 || mv.machine > run.configs[i].pos.size()) return false;
        auto succ = successors(g, mach, run.configs[i], mv.machine);
        bool found = false;
        for (const auto& s : succ)
            if (s.edgeIdx == mv.edgeIdx && s.transIdx == mv.transIdx &&
                s.config == run.configs[i + 1]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace spv
