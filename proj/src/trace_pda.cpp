#include "spv/trace_pda.hpp"

#include <bit>

namespace spv {

namespace {

// Visit every submask of m (including 0 and m itself).
template <typename F>
void forEachSubmask(uint16_t m, F f) {
    uint16_t s = m;
    while (true) {
        f(s);
        if (s == 0) break;
        s = (s - 1) & m;
    }
}

bool canErase(const BudgetedSpgg& g, VarId v, uint16_t idset) {
    return g.minForced[v] != UINT32_MAX &&
           g.minForced[v] <= static_cast<uint32_t>(std::popcount(idset));
}

}  // namespace

void forEachVarExpansion(const BudgetedSpgg& g, const Bounds& b, const VarSym& v,
                         const std::function<void(const std::vector<StackSym>&)>& yield) {
    uint32_t t = b.t();
    if (v.rowset == 0) {
        if (canErase(g, v.var, v.idset)) yield({});
        return;
    }
    for (const auto& r : g.base.rules) {
        if (r.head != v.var) continue;
        switch (r.kind) {
            case Rule::Terminal:
                yield({StackSym::col(makeEdgeLetter(t, v.rowset, r.sym, v.js, v.je))});
                break;
            case Rule::Series:
                for (int mb = 0; mb <= 1; ++mb) {
                    if (mb && r.mark == MarkAnn::Never) continue;
                    if (!mb && r.mark == MarkAnn::Always) continue;
                    // pick the middle-node id (if marked), then split the rest
                    uint16_t cand = mb ? v.idset : 1;
                    for (uint16_t jb = 0; jb < 16; ++jb) {
                        if (!(cand & (1u << jb))) continue;
                        uint8_t jm = mb ? static_cast<uint8_t>(jb + 1) : 0;
                        uint16_t rest = mb ? static_cast<uint16_t>(v.idset & ~(1u << jb))
                                           : v.idset;
                        forEachSubmask(rest, [&](uint16_t i1) {
                            yield({StackSym::var(VarSym{r.left, i1, v.rowset, v.js, jm}),
                                   StackSym::col(makeNodeLetter(t, v.rowset)),
                                   StackSym::var(VarSym{r.right,
                                                        static_cast<uint16_t>(rest & ~i1),
                                                        v.rowset, jm, v.je})});
                        });
                        if (!mb) break;
                    }
                }
                break;
            case Rule::Parallel: {
                TraceLetter fork = makeNodeLetter(t, v.rowset);
                forEachSubmask(v.rowset, [&](uint16_t r1) {
                    uint16_t r2 = v.rowset & ~r1;
                    forEachSubmask(v.idset, [&](uint16_t i1) {
                        yield({StackSym::col(fork),
                               StackSym::var(VarSym{r.left, i1, r1, v.js, v.je}),
                               StackSym::var(VarSym{r.right,
                                                    static_cast<uint16_t>(v.idset & ~i1), r2,
                                                    v.js, v.je}),
                               StackSym::col(fork)});
                    });
                });
                break;
            }
        }
    }
}

std::vector<BoundaryChoice> boundaryChoices(const BudgetedSpgg& g, const Bounds& b) {
    std::vector<BoundaryChoice> out;
    uint16_t all = b.k ? static_cast<uint16_t>((1u << b.k) - 1) : 0;
    for (uint16_t sb = 0; sb < 16; ++sb) {
        if (g.base.markSource && !(all & (1u << sb))) continue;
        uint8_t js = g.base.markSource ? static_cast<uint8_t>(sb + 1) : 0;
        uint16_t afterS = g.base.markSource ? static_cast<uint16_t>(all & ~(1u << sb)) : all;
        for (uint16_t eb = 0; eb < 16; ++eb) {
            if (g.base.markSink && !(afterS & (1u << eb))) continue;
            uint8_t je = g.base.markSink ? static_cast<uint8_t>(eb + 1) : 0;
            uint16_t rest = g.base.markSink ? static_cast<uint16_t>(afterS & ~(1u << eb))
                                            : afterS;
            out.push_back(BoundaryChoice{js, je, rest});
            if (!g.base.markSink) break;
        }
        if (!g.base.markSource) break;
    }
    return out;
}

void TracePda::expand(uint32_t q, const StackSym& top,
                      const std::function<void(const std::optional<TraceLetter>&, uint32_t,
                                               const std::vector<StackSym>&)>& yield) const {
    uint32_t t = b_.t();
    uint16_t allRows = static_cast<uint16_t>((1u << t) - 1);
    if (q == 0) {
        if (top.kind != StackSym::Bottom) return;
        TraceLetter boundary = makeNodeLetter(t, allRows);
        for (const auto& c : boundaryChoices(g_, b_)) {
            yield(std::nullopt, 1,
                  {StackSym::col(boundary),
                   StackSym::var(VarSym{g_.base.start, c.idset, allRows, c.js, c.je}),
                   StackSym::col(boundary), StackSym::bottom()});
        }
        return;
    }
    switch (top.kind) {
        case StackSym::Bottom:
            break;
        case StackSym::Col:
            yield(top.letter, 1, {});
            break;
        case StackSym::Var:
            forEachVarExpansion(g_, b_, top.v,
                                [&](const std::vector<StackSym>& push) { yield(std::nullopt, 1, push); });
            break;
    }
}

}  // namespace spv
