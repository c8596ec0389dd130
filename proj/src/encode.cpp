#include "spv/encode.hpp"

#include <algorithm>
#include <stdexcept>

namespace spv {

namespace {

// Walks the derivation tree in the same order realizeTree builds the graph:
// terminal edges are met in depth-first order (left branch first), series
// middle nodes are numbered 2.. in pre-order. Subtrees no row runs through
// advance the counters without emitting letters.
struct LayoutWalk {
    const MarkedGraph& g;
    const std::vector<std::vector<uint32_t>>& rowEdges;
    uint32_t t;
    TraceLayout out;
    uint32_t edgeCursor = 0;
    NodeId nodeCursor = 2;

    uint16_t rowsTouching(uint32_t lo, uint32_t hi) const {
        uint16_t m = 0;
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t e : rowEdges[i])
                if (e >= lo && e < hi) {
                    m |= static_cast<uint16_t>(1u << i);
                    break;
                }
        return m;
    }

    void emitEdge(uint16_t rows, uint32_t edgeIdx) {
        const Edge& e = g.graph.edges[edgeIdx];
        out.letters.push_back(makeEdgeLetter(t, rows, static_cast<SymId>(e.label),
                                             g.regId[e.src], g.regId[e.trg]));
        out.edgeOfLetter.push_back(static_cast<int32_t>(edgeIdx));
        out.nodeOfLetter.push_back(-1);
        out.letterKind.push_back(0);
        uint32_t pos = static_cast<uint32_t>(out.letters.size() - 1);
        for (uint32_t i = 0; i < t; ++i)
            if (rows & (1u << i)) out.rowLetters[i].push_back(pos);
    }

    void emitNode(uint16_t rows, NodeId n, uint8_t kind) {
        out.letters.push_back(makeNodeLetter(t, rows));
        out.edgeOfLetter.push_back(-1);
        out.nodeOfLetter.push_back(static_cast<int32_t>(n));
        out.letterKind.push_back(kind);
    }

    void walk(const DerivTree* tr, NodeId s, NodeId e) {
        uint32_t lo = edgeCursor, hi = lo + tr->edgeCount;
        uint16_t rows = rowsTouching(lo, hi);
        if (rows == 0) {
            edgeCursor = hi;
            nodeCursor += tr->seriesCount;
            return;
        }
        switch (tr->kind) {
            case Rule::Terminal:
                emitEdge(rows, edgeCursor++);
                break;
            case Rule::Series: {
                NodeId mid = nodeCursor++;
                walk(tr->left.get(), s, mid);
                emitNode(rows, mid, 1);
                walk(tr->right.get(), mid, e);
                break;
            }
            case Rule::Parallel:
                emitNode(rows, s, 2);
                walk(tr->left.get(), s, e);
                walk(tr->right.get(), s, e);
                emitNode(rows, e, 2);
                break;
        }
    }
};

}  // namespace

TraceLayout buildTraceLayout(const MarkedGraph& g, const Bounds& b,
                             const std::vector<std::vector<uint32_t>>& rowEdges) {
    if (!g.derivation) throw std::runtime_error("graph carries no derivation tree");
    uint32_t t = b.t();
    if (rowEdges.size() != t) throw std::runtime_error("need one path per row");
    LayoutWalk w{g, rowEdges, t};
    w.out.rowLetters.resize(t);
    uint16_t allRows = static_cast<uint16_t>((1u << t) - 1);
    w.emitNode(allRows, g.graph.source, 1);
    w.walk(g.derivation.get(), g.graph.source, g.graph.sink);
    w.emitNode(allRows, g.graph.sink, 1);
    for (uint32_t i = 0; i < t; ++i) {
        if (w.out.rowLetters[i].size() != rowEdges[i].size())
            throw std::runtime_error("row path not aligned with serialization");
        for (size_t j = 0; j < rowEdges[i].size(); ++j)
            if (w.out.edgeOfLetter[w.out.rowLetters[i][j]] !=
                static_cast<int32_t>(rowEdges[i][j]))
                throw std::runtime_error("row path not aligned with serialization");
    }
    return w.out;
}

namespace {

// First forward edge leaving / entering each node, for extending a path piece
// to a full source-to-sink path.
struct PathExtender {
    std::vector<uint32_t> firstOut, firstIn;
    const Graph& g;

    explicit PathExtender(const Graph& gr) : g(gr) {
        firstOut.assign(gr.nodeCount, UINT32_MAX);
        firstIn.assign(gr.nodeCount, UINT32_MAX);
        for (uint32_t idx = 0; idx < gr.edges.size(); ++idx) {
            const Edge& e = gr.edges[idx];
            if (firstOut[e.src] == UINT32_MAX) firstOut[e.src] = idx;
            if (firstIn[e.trg] == UINT32_MAX) firstIn[e.trg] = idx;
        }
    }

    std::vector<uint32_t> toSource(NodeId n) const {
        std::vector<uint32_t> back;
        while (n != g.source) {
            uint32_t e = firstIn[n];
            if (e == UINT32_MAX) throw std::runtime_error("node unreachable from source");
            back.push_back(e);
            n = g.edges[e].src;
        }
        std::reverse(back.begin(), back.end());
        return back;
    }

    void extendToSink(std::vector<uint32_t>& path, NodeId n) const {
        while (n != g.sink) {
            uint32_t e = firstOut[n];
            if (e == UINT32_MAX) throw std::runtime_error("node cannot reach sink");
            path.push_back(e);
            n = g.edges[e].trg;
        }
    }
};

}  // namespace

EncodeResult encodeRun(const MarkedGraph& g, const Machine& mach, const Bounds& b,
                       const Run& run) {
    SymGraph sg = symmetricClosure(g);
    uint32_t rt = b.rt(), t = b.t();

    // Forward-edge id -> index (sequential for realized graphs, but mapped
    // explicitly to stay correct for any graph).
    std::vector<uint32_t> idToIdx(g.graph.nextEdgeId, UINT32_MAX);
    for (uint32_t idx = 0; idx < g.graph.edges.size(); ++idx)
        idToIdx[g.graph.edges[idx].id] = idx;

    // Split each machine's moves into maximal same-direction segments; row h
    // odd travels forward, even backward.
    struct Seg {
        std::vector<uint32_t> moves;  // global move indices, time order
    };
    std::vector<std::vector<Seg>> segs(b.m);
    for (uint32_t gi = 0; gi < run.moves.size(); ++gi) {
        const Move& mv = run.moves[gi];
        auto& ms = segs[mv.machine - 1];
        if (ms.empty()) ms.emplace_back();
        int8_t d = sg.edges[mv.edgeIdx].dir;
        while (d != (ms.size() % 2 ? 1 : -1)) ms.emplace_back();
        ms.back().moves.push_back(gi);
    }
    for (auto& ms : segs) {
        if (ms.size() > rt) throw std::runtime_error("reversal bound exceeded");
        ms.resize(rt);
    }

    // Number the context-switch blocks in time order, splitting at reversals:
    // a block is a maximal run of moves of one (machine, segment).
    std::vector<uint8_t> blockOf(run.moves.size(), 0);
    std::vector<uint32_t> segOf(run.moves.size(), 0);
    for (uint32_t n = 0; n < b.m; ++n)
        for (uint32_t h = 0; h < rt; ++h)
            for (uint32_t gi : segs[n][h].moves) segOf[gi] = h;
    uint32_t blockCount = 0;
    for (uint32_t gi = 0; gi < run.moves.size(); ++gi) {
        if (gi == 0 || run.moves[gi].machine != run.moves[gi - 1].machine ||
            segOf[gi] != segOf[gi - 1])
            ++blockCount;
        if (blockCount > b.p) throw std::runtime_error("block bound exceeded");
        blockOf[gi] = static_cast<uint8_t>(blockCount);
    }

    // One full source-to-sink path per row: the segment's edges (reversed for
    // even rows so they read in forward direction) extended at both ends.
    PathExtender ext(g.graph);
    std::vector<std::vector<uint32_t>> rowEdges(t);
    std::vector<uint32_t> prefixLen(t, 0);
    for (uint32_t n = 0; n < b.m; ++n) {
        int lastUsed = -1;
        for (uint32_t h = 0; h < rt; ++h) {
            uint32_t i = n * rt + h;
            const Seg& s = segs[n][h];
            std::vector<uint32_t> piece;
            for (uint32_t gi : s.moves)
                piece.push_back(idToIdx[sg.edges[run.moves[gi].edgeIdx].base]);
            if (h % 2) std::reverse(piece.begin(), piece.end());
            if (piece.empty()) continue;
            lastUsed = static_cast<int>(h);
            std::vector<uint32_t> path = ext.toSource(g.graph.edges[piece.front()].src);
            prefixLen[i] = static_cast<uint32_t>(path.size());
            path.insert(path.end(), piece.begin(), piece.end());
            ext.extendToSink(path, g.graph.edges[piece.back()].trg);
            rowEdges[i] = std::move(path);
        }
        // Rows without moves travel the path of the machine's last moving
        // row, so they stay grouped with it at every shared node (machines
        // that never move follow the leftmost path).
        std::vector<uint32_t> spare = lastUsed < 0
                                          ? ext.toSource(g.graph.sink)
                                          : rowEdges[n * rt + lastUsed];
        for (uint32_t h = 0; h < rt; ++h)
            if (segs[n][h].moves.empty()) rowEdges[n * rt + h] = spare;
    }

    EncodeResult res;
    res.blockCount = blockCount;
    res.layout = buildTraceLayout(g, b, rowEdges);

    uint32_t len = static_cast<uint32_t>(res.layout.letters.size());
    res.word.resize(len);
    for (uint32_t pos = 0; pos < len; ++pos) {
        res.word[pos].trace = res.layout.letters[pos];
        res.word[pos].exec.resize(b.m * rt);
        for (uint32_t i = 0; i < b.m * rt; ++i)
            res.word[pos].exec[i] = inactiveExecRow(mach.initial, i);
    }

    // Lay the operations over the skeleton. Every operation records the state
    // the machine moves into; positions strictly between a row's operations
    // repeat the block and state of the neighbouring operation — the previous
    // one on forward rows, the next one on backward rows (whose operations
    // appear in the word in reverse time order).
    auto columnOf = [&](NodeId v, uint32_t from, bool forward) -> uint32_t {
        if (forward) {
            for (uint32_t pos = from; pos < len; ++pos)
                if (res.layout.letterKind[pos] == 1 &&
                    res.layout.nodeOfLetter[pos] == static_cast<int32_t>(v))
                    return pos;
        } else {
            for (uint32_t pos = from + 1; pos-- > 0;)
                if (res.layout.letterKind[pos] == 1 &&
                    res.layout.nodeOfLetter[pos] == static_cast<int32_t>(v))
                    return pos;
        }
        throw std::runtime_error("node column not found");
    };
    for (uint32_t n = 0; n < b.m; ++n) {
        int lastUsed = -1;
        for (uint32_t h = 0; h < rt; ++h) {
            uint32_t i = n * rt + h;
            const Seg& s = segs[n][h];
            uint32_t q = static_cast<uint32_t>(s.moves.size());
            if (q == 0) continue;
            lastUsed = static_cast<int>(h);
            uint32_t firstPos = res.layout.rowLetters[i][prefixLen[i]];
            uint32_t lastPos = res.layout.rowLetters[i][prefixLen[i] + q - 1];
            uint8_t curBlock = 0;
            StateId curState = mach.initial;
            auto opRow = [&](uint32_t opJ) {
                uint32_t gi = h % 2 ? s.moves[q - 1 - opJ] : s.moves[opJ];
                const Transition& tr = mach.transitions[run.moves[gi].transIdx];
                return ExecRow{blockOf[gi], tr.read, tr.write, run.configs[gi + 1].state[n],
                               static_cast<uint8_t>(i + 1)};
            };
            if (h % 2 == 0) {
                uint32_t opJ = 0;
                for (uint32_t pos = firstPos; pos <= lastPos; ++pos) {
                    if (res.layout.rowLetters[i][prefixLen[i] + opJ] == pos) {
                        ExecRow er = opRow(opJ++);
                        curBlock = er.block;
                        curState = er.succ;
                        res.word[pos].exec[i] = er;
                    } else {
                        res.word[pos].exec[i] =
                            ExecRow{curBlock, 0, 0, curState, static_cast<uint8_t>(i + 1)};
                    }
                }
            } else {
                uint32_t opJ = q;
                for (uint32_t pos = lastPos + 1; pos-- > firstPos;) {
                    if (res.layout.rowLetters[i][prefixLen[i] + opJ - 1] == pos) {
                        ExecRow er = opRow(--opJ);
                        curBlock = er.block;
                        curState = er.succ;
                        res.word[pos].exec[i] = er;
                    } else {
                        res.word[pos].exec[i] =
                            ExecRow{curBlock, 0, 0, curState, static_cast<uint8_t>(i + 1)};
                    }
                }
                // A backward row's operations appear right of the column of
                // the node the segment stops at; pad the gap with the block
                // and state the segment ends in, so the word always shows
                // them at that column.
                uint32_t giLast = s.moves.back();
                NodeId u = run.configs[giLast + 1].pos[n];
                ExecRow pad{blockOf[giLast], 0, 0, run.configs[giLast + 1].state[n],
                            static_cast<uint8_t>(i + 1)};
                uint32_t col = columnOf(u, firstPos - 1, false);
                for (uint32_t pos = col; pos < firstPos; ++pos) res.word[pos].exec[i] = pad;
            }
        }
        // Extend the final block's padding of the last moving row up to the
        // column of the node the machine stops at, so the word still shows the
        // machine's final block and state next to that column. Backward rows
        // already receive this padding in the loop above.
        if (lastUsed < 0 || lastUsed % 2) continue;
        uint32_t h = static_cast<uint32_t>(lastUsed);
        uint32_t i = n * rt + h;
        const Seg& s = segs[n][h];
        uint32_t q = static_cast<uint32_t>(s.moves.size());
        NodeId v = run.configs.back().pos[n];
        uint8_t finalBlock = blockOf[s.moves.back()];
        StateId finalState = run.configs.back().state[n];
        ExecRow pad{finalBlock, 0, 0, finalState, static_cast<uint8_t>(i + 1)};
        uint32_t lastPos = res.layout.rowLetters[i][prefixLen[i] + q - 1];
        uint32_t col = columnOf(v, lastPos + 1, true);
        for (uint32_t pos = lastPos + 1; pos < col; ++pos) res.word[pos].exec[i] = pad;
    }
    return res;
}

}  // namespace spv
