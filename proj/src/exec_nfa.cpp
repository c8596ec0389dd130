#include "spv/exec_nfa.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace spv {

namespace {

ExecSpan closedSpan() {
    ExecSpan s;
    s.phase = ExecSpan::Phase::Closed;
    return s;
}

bool sameIndex(const TraceLetter& t, uint8_t a, uint8_t b) {
    return t.indices[a - 1] == t.indices[b - 1];
}

}  // namespace

ExecTwoNfa::ExecTwoNfa(Machine mach, const Bounds& b, uint32_t machine, bool paddedOpensOnly)
    : mach_(std::move(mach)),
      rt_(b.rt()),
      t_(b.t()),
      base_((machine - 1) * b.rt()),
      paddedOpensOnly_(paddedOpensOnly) {
    if (mach_.states.size() > 64)
        throw std::runtime_error("machines with more than 64 states are not supported");
}

uint32_t ExecTwoNfa::stateCount() const { return static_cast<uint32_t>(pool_.size()); }

uint32_t ExecTwoNfa::intern(const std::vector<ExecSpan>& s) const {
    auto [it, fresh] = index_.emplace(s, static_cast<uint32_t>(pool_.size()));
    if (fresh) pool_.push_back(s);
    return it->second;
}

uint32_t ExecTwoNfa::initial() const {
    std::vector<ExecSpan> s(rt_);
    s[0].phase = ExecSpan::Phase::Open;
    s[0].ptr = static_cast<uint8_t>(base_ + 1);
    s[0].track = mach_.initial;
    return intern(s);
}

bool ExecTwoNfa::acceptingState(uint32_t q) const { return q == kAccept; }

void ExecTwoNfa::moves(uint32_t q, Cell cell, const CompositeLetter* letter,
                       const std::function<void(uint32_t, int8_t)>& yield) const {
    if (q == kAccept) return;
    switch (cell) {
        case Cell::LeftEnd:
            yield(q, 1);
            return;
        case Cell::RightEnd: {
            for (uint32_t hi = 1; hi < rt_; hi += 2)
                if (pool_[q][hi].phase == ExecSpan::Phase::Open) return;
            yield(kAccept, 1);
            return;
        }
        case Cell::Letter: {
            if (letter->exec.size() != t_) return;
            // copy: interning successors may grow the pool under the source
            std::vector<ExecSpan> src = pool_[q];
            letterMoves(src, *letter, [&](uint32_t s) { yield(s, 1); });
            return;
        }
    }
}

void ExecTwoNfa::letterMoves(const std::vector<ExecSpan>& st, const CompositeLetter& l,
                             const std::function<void(uint32_t)>& yield) const {
    const TraceLetter& tl = l.trace;
    std::vector<ExecSpan> cur(rt_);

    // One decision per block, taken left to right; opening and closing touch
    // the next block as well and skip it.
    std::function<void(uint32_t)> rec = [&](uint32_t hi) {
        if (hi == rt_) {
            yield(intern(cur));
            return;
        }
        const ExecSpan& sp = st[hi];
        const ExecRow& er = l.exec[base_ + hi];
        bool inact = er == inactiveExecRow(mach_.initial, base_ + hi);
        bool rowValid = er.traceRow >= 1 && er.traceRow <= t_;
        bool fwd = hi % 2 == 0;
        auto go = [&](const ExecSpan& ns) {
            cur[hi] = ns;
            rec(hi + 1);
        };

        if (sp.phase != ExecSpan::Phase::Open) {
            // dormant rows must carry the canonical padding content
            if (inact && sp.phase == ExecSpan::Phase::NotStarted) go(sp);
            if (inact && sp.phase == ExecSpan::Phase::Closed) go(sp);
        } else if (fwd) {
            bool ptrActive = tl.rowActive(sp.ptr - 1);
            if (ptrActive) {
                // the block rides this edge: take an operation, or end here
                const TraceRow& tr = tl.rows[sp.ptr - 1];
                if (er.traceRow == sp.ptr && er.block > 0 &&
                    (tr.srcReg != 0 || (er.read == 0 && er.write == 0))) {
                    for (const Transition& d : mach_.transitions)
                        if (d.q == sp.track && d.sym == tr.label && d.dir == 1 &&
                            d.read == er.read && d.q2 == er.succ && d.write == er.write) {
                            ExecSpan ns = sp;
                            ns.track = er.succ;
                            ns.curBlock = er.block;
                            go(ns);
                            break;
                        }
                }
                if (inact) go(closedSpan());
            } else {
                // a block only ends at one of its own row's columns, so a
                // letter the row does not ride cannot close the span
                if (inact) go(sp);
                if (rowValid && er.block > 0 && er.read == 0 && er.write == 0 &&
                    er.succ == sp.track && er.block == sp.curBlock &&
                    er.traceRow == sp.ptr)
                    go(sp);
            }
        } else {
            bool ptrActive = tl.rowActive(sp.ptr - 1);
            if (ptrActive) {
                // operations are mandatory on every edge the block rides
                const TraceRow& tr = tl.rows[sp.ptr - 1];
                bool ok = er.traceRow == sp.ptr && er.block > 0 &&
                          (tr.trgReg != 0 || (er.read == 0 && er.write == 0));
                if (ok && sp.hasExpect)
                    ok = er.succ == sp.expState &&
                         (sp.expBlock == 0 || er.block == sp.expBlock);
                if (ok && sp.hasPending) ok = (sp.pendMask >> er.succ) & 1;
                if (ok) {
                    uint64_t mask = 0;
                    for (const Transition& d : mach_.transitions)
                        if (d.sym == tr.label && d.dir == -1 && d.read == er.read &&
                            d.q2 == er.succ && d.write == er.write)
                            mask |= uint64_t(1) << d.q;
                    if (mask != 0) {  // an undischargeable operation never closes
                        ExecSpan ns = sp;
                        ns.hasExpect = false;
                        ns.expBlock = 0;
                        ns.expState = 0;
                        ns.hasPending = true;
                        ns.pendMask = mask;
                        go(ns);
                    }
                }
            } else {
                if (inact) go(sp);
                if (rowValid && er.block > 0 && er.read == 0 && er.write == 0 &&
                    er.traceRow == sp.ptr) {
                    if (sp.hasExpect) {
                        if (er.succ == sp.expState &&
                            (sp.expBlock == 0 || er.block == sp.expBlock)) {
                            ExecSpan ns = sp;
                            ns.expBlock = er.block;
                            go(ns);
                        }
                    } else {
                        ExecSpan ns = sp;
                        ns.hasExpect = true;
                        ns.expBlock = er.block;
                        ns.expState = er.succ;
                        go(ns);
                    }
                }
            }
        }

        if (!tl.shared) return;

        if (fwd && hi + 1 < rt_) {
            // a forward block and the backward block after it end together at
            // a node both their rows pass through; the deferred check of the
            // backward block's earliest operation closes against the forward
            // block's final state
            const ExecSpan& sq = st[hi + 1];
            const ExecRow& er2 = l.exec[base_ + hi + 1];
            if (sp.phase == ExecSpan::Phase::Open && sq.phase == ExecSpan::Phase::Open &&
                inact && er2 == inactiveExecRow(mach_.initial, base_ + hi + 1) &&
                sameIndex(tl, sp.ptr, sq.ptr) && sq.hasPending && !sq.hasExpect &&
                ((sq.pendMask >> sp.track) & 1)) {
                cur[hi] = closedSpan();
                cur[hi + 1] = closedSpan();
                rec(hi + 2);
            }
        }

        if (!fwd && sp.phase == ExecSpan::Phase::NotStarted) {
            // a backward block and the forward block after it start together
            // at a node; the machine state connecting them is guessed and
            // verified against the operations on both sides
            auto openPair = [&](uint8_t pe, StateId s, uint8_t expBlock, bool solo,
                                uint8_t po) {
                ExecSpan bwd;
                bwd.phase = ExecSpan::Phase::Open;
                bwd.ptr = pe;
                bwd.hasExpect = true;
                bwd.expBlock = expBlock;
                bwd.expState = s;
                cur[hi] = bwd;
                if (solo) {
                    rec(hi + 1);
                    return;
                }
                ExecSpan fwdSp;
                fwdSp.phase = ExecSpan::Phase::Open;
                fwdSp.ptr = po;
                fwdSp.track = s;
                cur[hi + 1] = fwdSp;
                rec(hi + 2);
            };
            bool solo = hi + 1 == rt_;
            bool partnerOk =
                solo || (st[hi + 1].phase == ExecSpan::Phase::NotStarted &&
                         l.exec[base_ + hi + 1] ==
                             inactiveExecRow(mach_.initial, base_ + hi + 1));
            if (partnerOk) {
                // every span rides its own trace row, so the pointers of the
                // opening pair are fixed; the node they start at must group
                // both rows under one shared index
                uint8_t pe = static_cast<uint8_t>(base_ + hi + 1);
                uint8_t po = static_cast<uint8_t>(base_ + hi + 2);
                // the backward row may already carry the block's padding,
                // which pins the guessed state and block
                std::vector<std::pair<StateId, uint8_t>> guesses;
                if (inact && !paddedOpensOnly_) {
                    for (StateId s = 0; s < mach_.states.size(); ++s)
                        guesses.push_back({s, 0});
                } else if (rowValid && er.block > 0 && er.read == 0 &&
                           er.write == 0 && er.traceRow == pe) {
                    guesses.push_back({er.succ, er.block});
                }
                for (auto [s, eb] : guesses) {
                    if (solo) {
                        openPair(pe, s, eb, true, 0);
                    } else if (sameIndex(tl, pe, po)) {
                        openPair(pe, s, eb, false, po);
                    }
                }
            }
        }
    };
    rec(0);
}

Execution extractExecution(const std::vector<CompositeLetter>& word, uint32_t machine,
                           const Bounds& b, StateId initial) {
    uint32_t rt = b.rt(), base = (machine - 1) * rt;
    Execution out{stateToken(initial)};
    for (uint32_t h = 0; h < rt; ++h) {
        std::vector<const CompositeLetter*> ops;
        for (const CompositeLetter& l : word) {
            if (l.trace.shared || l.exec.size() <= base + h) continue;
            const ExecRow& er = l.exec[base + h];
            if (er.block == 0 || er.traceRow < 1 || er.traceRow > l.trace.rows.size())
                continue;
            if (l.trace.rows[er.traceRow - 1].label == kNoSym) continue;
            ops.push_back(&l);
        }
        if (h % 2) std::reverse(ops.begin(), ops.end());
        for (const CompositeLetter* l : ops) {
            const ExecRow& er = l->exec[base + h];
            out.push_back(opToken(l->trace.rows[er.traceRow - 1].label, er.read, er.write));
            out.push_back(stateToken(er.succ));
        }
    }
    return out;
}

}  // namespace spv
