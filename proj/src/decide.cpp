#include "spv/decide.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "spv/enumerate.hpp"
#include "spv/graph.hpp"

namespace spv {

ReachabilityProduct::ReachabilityProduct(const BudgetedSpgg& g, const Machine& mach,
                                         const Bounds& b, const ConfigProperty& f)
    : mach_(mach), b_(b), trace_(g, b), reg_(b), rw_(b), prop_(f, b, mach.initial) {
    for (uint32_t n = 1; n <= b.m; ++n)
        exec_.push_back(std::make_unique<ExecTwoNfa>(mach, b, n, /*paddedOpensOnly=*/true));
}

uint32_t ReachabilityProduct::intern(const State& s) const {
    auto [it, fresh] = index_.emplace(s, static_cast<uint32_t>(pool_.size()));
    if (fresh) pool_.push_back(s);
    return it->second;
}

std::vector<uint32_t> ReachabilityProduct::initials() const {
    std::vector<uint32_t> out;
    for (uint32_t rg : reg_.initials())
        for (uint32_t rw : rw_.initials())
            for (uint32_t pr : prop_.initials()) {
                State s;
                s.trace = trace_.initials()[0];
                s.reg = rg;
                s.rw = rw;
                s.prop = pr;
                for (const auto& e : exec_) s.exec.push_back(e->initial());
                out.push_back(intern(s));
            }
    return out;
}

bool ReachabilityProduct::acceptingState(uint32_t q) const {
    const State s = pool_[q];
    if (!trace_.acceptingState(s.trace)) return false;
    if (!reg_.accepting(s.reg) || !rw_.accepting(s.rw) || !prop_.accepting(s.prop)) return false;
    for (size_t n = 0; n < exec_.size(); ++n) {
        bool acc = false;
        exec_[n]->moves(s.exec[n], TwoNfa<CompositeLetter>::Cell::RightEnd, nullptr,
                        [&](uint32_t q2, int8_t) { acc = acc || exec_[n]->acceptingState(q2); });
        if (!acc) return false;
    }
    return true;
}

std::vector<std::vector<ExecRow>> ReachabilityProduct::rowOptions(uint32_t machine,
                                                                  const State& s,
                                                                  const TraceLetter& tl) const {
    uint32_t rt = b_.rt();
    uint32_t base = (machine - 1) * rt;
    const std::vector<ExecSpan>& spans = exec_[machine - 1]->spansOf(s.exec[machine - 1]);
    const RwConfig& rw = rw_.configOf(s.rw);
    StateId q0 = mach_.initial;
    uint32_t nq = static_cast<uint32_t>(mach_.states.size());

    // Blocks a row could legally carry next: the block it is already
    // simulating, or an unclaimed block that still respects the register
    // checker's ordering — above everything earlier rows of the machine have
    // used, below everything later rows have used, rising along forward rows
    // and falling along backward rows. Used ranges only grow, so filtering
    // against the current ones discards no block that could still be claimed.
    auto blockCands = [&](uint32_t hi) {
        bool fwd = hi % 2 == 0;
        const RwRow& ownRow = rw.rows[base + hi];
        std::vector<uint8_t> out;
        if (ownRow.openBlock) out.push_back(ownRow.openBlock);
        for (uint8_t bn = 1; bn <= b_.p; ++bn) {
            if ((rw.owned >> (bn - 1)) & 1) continue;
            if (fwd ? ownRow.usedMax >= bn : (ownRow.usedMin != 0 && ownRow.usedMin <= bn))
                continue;
            bool ok = true;
            for (uint32_t h2 = 0; h2 < rt && ok; ++h2) {
                const RwRow& rr = rw.rows[base + h2];
                if (h2 < hi && rr.usedMax >= bn) ok = false;
                if (h2 > hi && rr.usedMin != 0 && rr.usedMin <= bn) ok = false;
            }
            if (ok) out.push_back(bn);
        }
        return out;
    };

    // states a backward operation can move into
    std::vector<uint8_t> bwdTarget(nq, 0);
    for (const Transition& d : mach_.transitions)
        if (d.dir == -1) bwdTarget[d.q2] = 1;

    std::vector<std::vector<ExecRow>> perRow(rt);
    for (uint32_t hi = 0; hi < rt; ++hi) {
        uint32_t i = base + hi;
        uint8_t own = static_cast<uint8_t>(i + 1);
        const ExecSpan& sp = spans[hi];
        bool fwd = hi % 2 == 0;
        std::vector<ExecRow>& opts = perRow[hi];
        ExecRow inact = inactiveExecRow(q0, i);

        if (sp.phase != ExecSpan::Phase::Open) {
            opts.push_back(inact);
            bool partnerFree = hi + 1 == rt || spans[hi + 1].phase == ExecSpan::Phase::NotStarted;
            if (!fwd && sp.phase == ExecSpan::Phase::NotStarted && tl.shared && partnerFree)
                // padding that pins the block about to open on this row
                for (uint8_t bn : blockCands(hi))
                    for (StateId st = 0; st < nq; ++st)
                        if (bwdTarget[st]) opts.push_back(ExecRow{bn, 0, 0, st, own});
        } else if (!tl.shared && sp.ptr == own && tl.rows[i].label != kNoSym) {
            // the block rides this edge: an operation backed by a transition
            const TraceRow& tr = tl.rows[i];
            if (fwd) {
                opts.push_back(inact);  // or the block ended just before it
                for (const Transition& d : mach_.transitions) {
                    if (d.q != sp.track || d.sym != tr.label || d.dir != 1) continue;
                    if (tr.srcReg == 0 && (d.read || d.write)) continue;
                    for (uint8_t bn : blockCands(hi))
                        opts.push_back(ExecRow{bn, d.read, d.write, d.q2, own});
                }
            } else {
                std::vector<uint8_t> blocks = sp.hasExpect && sp.expBlock
                                                  ? std::vector<uint8_t>{sp.expBlock}
                                                  : blockCands(hi);
                for (const Transition& d : mach_.transitions) {
                    if (d.sym != tr.label || d.dir != -1) continue;
                    if (tr.trgReg == 0 && (d.read || d.write)) continue;
                    if (sp.hasExpect && d.q2 != sp.expState) continue;
                    for (uint8_t bn : blocks)
                        opts.push_back(ExecRow{bn, d.read, d.write, d.q2, own});
                }
            }
        } else {
            opts.push_back(inact);
            if (fwd) {
                if (sp.curBlock) opts.push_back(ExecRow{sp.curBlock, 0, 0, sp.track, own});
            } else if (sp.hasExpect) {
                if (sp.expBlock) {
                    opts.push_back(ExecRow{sp.expBlock, 0, 0, sp.expState, own});
                } else {
                    for (uint8_t bn : blockCands(hi))
                        opts.push_back(ExecRow{bn, 0, 0, sp.expState, own});
                }
            } else {
                // padding right of an operation announces the next block
                for (uint8_t bn : blockCands(hi))
                    for (StateId st = 0; st < nq; ++st)
                        if (bwdTarget[st]) opts.push_back(ExecRow{bn, 0, 0, st, own});
            }
        }
        std::sort(opts.begin(), opts.end());
        opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    }

    std::vector<std::vector<ExecRow>> out;
    std::vector<ExecRow> cur(rt);
    std::function<void(uint32_t)> rec = [&](uint32_t hi) {
        if (hi == rt) {
            out.push_back(cur);
            return;
        }
        for (const ExecRow& er : perRow[hi]) {
            cur[hi] = er;
            rec(hi + 1);
        }
    };
    rec(0);
    return out;
}

const std::vector<std::pair<uint32_t, uint32_t>>& ReachabilityProduct::letterSuccessors(
    const State& s, const TraceLetter& tl) const {
    auto [tlIt, tlFresh] = tlIndex_.emplace(tl, static_cast<uint32_t>(tlIndex_.size()));
    uint32_t tlId = tlIt->second;
    if (tlId >= (1u << 20)) throw std::length_error("trace alphabet too large to index");
    std::vector<uint32_t> rest{s.reg, s.rw, s.prop};
    rest.insert(rest.end(), s.exec.begin(), s.exec.end());
    auto [restIt, restFresh] =
        restIndex_.emplace(std::move(rest), static_cast<uint32_t>(rests_.size()));
    if (restFresh) rests_.push_back(restIt->first);
    uint64_t key = (uint64_t(restIt->second) << 20) | tlId;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<std::pair<uint32_t, uint32_t>> out;
    std::vector<uint32_t> regSucc = reg_.step(s.reg, tl);
    if (!regSucc.empty()) {
        std::vector<std::vector<std::vector<ExecRow>>> perMachine;
        for (uint32_t n = 1; n <= b_.m; ++n) perMachine.push_back(rowOptions(n, s, tl));

        uint32_t rt = b_.rt();
        std::vector<ExecRow> exec(b_.t());
        std::function<void(uint32_t)> combo = [&](uint32_t n) {
            if (n < b_.m) {
                for (const auto& rows : perMachine[n]) {
                    for (uint32_t hi = 0; hi < rt; ++hi) exec[n * rt + hi] = rows[hi];
                    combo(n + 1);
                }
                return;
            }
            CompositeLetter l{tl, exec};
            std::vector<std::vector<uint32_t>> execSucc(b_.m);
            for (uint32_t j = 0; j < b_.m; ++j) {
                exec_[j]->moves(s.exec[j], TwoNfa<CompositeLetter>::Cell::Letter, &l,
                                [&](uint32_t q2, int8_t) { execSucc[j].push_back(q2); });
                if (execSucc[j].empty()) return;
            }
            std::vector<uint32_t> rwSucc = rw_.step(s.rw, l);
            if (rwSucc.empty()) return;
            std::vector<uint32_t> propSucc = prop_.step(s.prop, l);
            if (propSucc.empty()) return;
            auto [lIt, lFresh] =
                letterPoolIndex_.emplace(l, static_cast<uint32_t>(letterPool_.size()));
            if (lFresh) letterPool_.push_back(l);
            uint32_t lid = lIt->second;
            std::vector<uint32_t> rest2(3 + b_.m);
            std::function<void(uint32_t)> emit = [&](uint32_t j) {
                if (j < b_.m) {
                    for (uint32_t e2 : execSucc[j]) {
                        rest2[3 + j] = e2;
                        emit(j + 1);
                    }
                    return;
                }
                for (uint32_t rg : regSucc)
                    for (uint32_t rw2 : rwSucc)
                        for (uint32_t pr : propSucc) {
                            rest2[0] = rg;
                            rest2[1] = rw2;
                            rest2[2] = pr;
                            auto [rIt, rFresh] = restIndex_.emplace(
                                rest2, static_cast<uint32_t>(rests_.size()));
                            if (rFresh) rests_.push_back(rIt->first);
                            out.push_back({lid, rIt->second});
                        }
            };
            emit(0);
        };
        combo(0);
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

void ReachabilityProduct::expand(
    uint32_t q, const StackSym& top,
    const std::function<void(const std::optional<CompositeLetter>&, uint32_t,
                             const std::vector<StackSym>&)>& yield) const {
    const State s = pool_[q];  // copy: interning grows the pool
    trace_.expand(s.trace, top, [&](const std::optional<TraceLetter>& in, uint32_t tq,
                                    const std::vector<StackSym>& push) {
        if (!in) {
            State s2 = s;
            s2.trace = tq;
            yield(std::nullopt, intern(s2), push);
            return;
        }
        const auto& entries = letterSuccessors(s, *in);
        State s2 = s;
        s2.trace = tq;
        for (auto [lid, rid] : entries) {
            const std::vector<uint32_t>& rest = rests_[rid];
            s2.reg = rest[0];
            s2.rw = rest[1];
            s2.prop = rest[2];
            for (uint32_t j = 0; j < b_.m; ++j) s2.exec[j] = rest[3 + j];
            yield(letterPool_[lid], intern(s2), push);
        }
    });
}

namespace {

// Smallest terminating derivation per variable, preferring fewer marks, then
// fewer edges; used to materialize subgraphs no machine path runs through.
std::vector<std::shared_ptr<const DerivTree>> minimalDerivations(const Spgg& g) {
    struct Best {
        uint32_t marks = UINT32_MAX;
        uint32_t edges = UINT32_MAX;
        std::shared_ptr<const DerivTree> tree;
    };
    std::vector<Best> best(g.variables.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : g.rules) {
            Best cand;
            if (r.kind == Rule::Terminal) {
                auto t = std::make_shared<DerivTree>();
                t->kind = Rule::Terminal;
                t->head = r.head;
                t->sym = r.sym;
                t->edgeCount = 1;
                cand = Best{0, 1, t};
            } else {
                const Best& l = best[r.left];
                const Best& rb = best[r.right];
                if (!l.tree || !rb.tree) continue;
                bool mark = r.kind == Rule::Series && r.mark == MarkAnn::Always;
                auto t = std::make_shared<DerivTree>();
                t->kind = r.kind;
                t->head = r.head;
                t->markMiddle = mark;
                t->left = l.tree;
                t->right = rb.tree;
                t->seriesCount = l.tree->seriesCount + rb.tree->seriesCount +
                                 (r.kind == Rule::Series ? 1 : 0);
                t->edgeCount = l.edges + rb.edges;
                t->markCount = l.marks + rb.marks + (mark ? 1 : 0);
                cand = Best{t->markCount, t->edgeCount, t};
            }
            Best& cur = best[r.head];
            if (std::tie(cand.marks, cand.edges) < std::tie(cur.marks, cur.edges)) {
                cur = cand;
                changed = true;
            }
        }
    }
    std::vector<std::shared_ptr<const DerivTree>> out;
    for (const Best& b2 : best) out.push_back(b2.tree);
    return out;
}

// Chart parser recovering a derivation of a trace-letter sequence: a variable
// annotated with row set, register-id budget and boundary ids derives a word
// range exactly as the trace PDA would expand it.
struct TraceParser {
    const BudgetedSpgg& g;
    const Bounds& b;
    const std::vector<TraceLetter>& w;
    std::vector<std::shared_ptr<const DerivTree>> minimal;
    std::map<std::tuple<VarSym, uint32_t, uint32_t>, std::shared_ptr<const DerivTree>> memo;

    std::shared_ptr<const DerivTree> parse(const VarSym& vs, uint32_t lo, uint32_t hi) {
        auto key = std::make_tuple(vs, lo, hi);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo[key] = nullptr;  // also blocks infinite left recursion on empty ranges
        std::shared_ptr<const DerivTree> result = derive(vs, lo, hi);
        memo[key] = result;
        return result;
    }

    std::shared_ptr<const DerivTree> derive(const VarSym& vs, uint32_t lo, uint32_t hi) {
        uint32_t t = b.t();
        if (vs.rowset == 0) {
            // erased subgraph: consumes no letters, realized minimally
            if (lo == hi && g.minForced[vs.var] != UINT32_MAX &&
                g.minForced[vs.var] <= static_cast<uint32_t>(std::popcount(vs.idset)))
                return minimal[vs.var];
            return nullptr;
        }
        for (const Rule& r : g.base.rules) {
            if (r.head != vs.var) continue;
            switch (r.kind) {
                case Rule::Terminal: {
                    if (hi - lo != 1) break;
                    if (!(w[lo] == makeEdgeLetter(t, vs.rowset, r.sym, vs.js, vs.je))) break;
                    auto tr = std::make_shared<DerivTree>();
                    tr->kind = Rule::Terminal;
                    tr->head = r.head;
                    tr->sym = r.sym;
                    tr->edgeCount = 1;
                    return tr;
                }
                case Rule::Series: {
                    TraceLetter midL = makeNodeLetter(t, vs.rowset);
                    for (uint32_t mid = lo; mid < hi; ++mid) {
                        if (!(w[mid] == midL)) continue;
                        for (int mb = 0; mb <= 1; ++mb) {
                            if (mb && r.mark == MarkAnn::Never) continue;
                            if (!mb && r.mark == MarkAnn::Always) continue;
                            uint16_t cand = mb ? vs.idset : 1;
                            for (uint16_t jb = 0; jb < 16; ++jb) {
                                if (!(cand & (1u << jb))) continue;
                                uint8_t jm = mb ? static_cast<uint8_t>(jb + 1) : 0;
                                uint16_t rest =
                                    mb ? static_cast<uint16_t>(vs.idset & ~(1u << jb))
                                       : vs.idset;
                                uint16_t i1 = rest;
                                while (true) {
                                    auto lt = parse(VarSym{r.left, i1, vs.rowset, vs.js, jm},
                                                    lo, mid);
                                    if (lt) {
                                        auto rt2 = parse(
                                            VarSym{r.right,
                                                   static_cast<uint16_t>(rest & ~i1),
                                                   vs.rowset, jm, vs.je},
                                            mid + 1, hi);
                                        if (rt2) {
                                            auto tr = std::make_shared<DerivTree>();
                                            tr->kind = Rule::Series;
                                            tr->head = r.head;
                                            tr->markMiddle = mb;
                                            tr->left = lt;
                                            tr->right = rt2;
                                            tr->seriesCount = lt->seriesCount +
                                                              rt2->seriesCount + 1;
                                            tr->edgeCount =
                                                lt->edgeCount + rt2->edgeCount;
                                            tr->markCount = lt->markCount +
                                                            rt2->markCount + (mb ? 1 : 0);
                                            return tr;
                                        }
                                    }
                                    if (i1 == 0) break;
                                    i1 = (i1 - 1) & rest;
                                }
                                if (!mb) break;
                            }
                        }
                    }
                    break;
                }
                case Rule::Parallel: {
                    if (hi - lo < 2) break;
                    TraceLetter forkL = makeNodeLetter(t, vs.rowset);
                    if (!(w[lo] == forkL) || !(w[hi - 1] == forkL)) break;
                    uint16_t r1 = vs.rowset;
                    while (true) {
                        uint16_t r2 = vs.rowset & ~r1;
                        for (uint32_t mid = lo + 1; mid <= hi - 1; ++mid) {
                            uint16_t i1 = vs.idset;
                            while (true) {
                                auto lt =
                                    parse(VarSym{r.left, i1, r1, vs.js, vs.je}, lo + 1, mid);
                                if (lt) {
                                    auto rt2 = parse(
                                        VarSym{r.right,
                                               static_cast<uint16_t>(vs.idset & ~i1), r2,
                                               vs.js, vs.je},
                                        mid, hi - 1);
                                    if (rt2) {
                                        auto tr = std::make_shared<DerivTree>();
                                        tr->kind = Rule::Parallel;
                                        tr->head = r.head;
                                        tr->left = lt;
                                        tr->right = rt2;
                                        tr->seriesCount =
                                            lt->seriesCount + rt2->seriesCount;
                                        tr->edgeCount = lt->edgeCount + rt2->edgeCount;
                                        tr->markCount = lt->markCount + rt2->markCount;
                                        return tr;
                                    }
                                }
                                if (i1 == 0) break;
                                i1 = (i1 - 1) & vs.idset;
                            }
                        }
                        if (r1 == 0) break;
                        r1 = (r1 - 1) & vs.rowset;
                    }
                    break;
                }
            }
        }
        return nullptr;
    }
};

}  // namespace

std::pair<MarkedGraph, Run> decodeWitness(const std::vector<CompositeLetter>& word,
                                          const Spgg& g, const Machine& mach, const Bounds& b) {
    BudgetedSpgg lifted = liftGrammar(g, static_cast<uint8_t>(b.k));
    uint32_t t = b.t();
    uint32_t rt = b.rt();
    if (word.size() < 2) throw std::runtime_error("witness word lacks its boundary columns");
    uint16_t allRows = static_cast<uint16_t>((1u << t) - 1);
    TraceLetter boundary = makeNodeLetter(t, allRows);
    if (!(word.front().trace == boundary) || !(word.back().trace == boundary))
        throw std::runtime_error("witness word lacks its boundary columns");
    std::vector<TraceLetter> inner;
    for (size_t i = 1; i + 1 < word.size(); ++i) inner.push_back(word[i].trace);

    TraceParser parser{lifted, b, inner, minimalDerivations(g), {}};
    std::shared_ptr<const DerivTree> tree;
    for (const BoundaryChoice& c : boundaryChoices(lifted, b)) {
        tree = parser.parse(VarSym{g.start, c.idset, allRows, c.js, c.je}, 0,
                            static_cast<uint32_t>(inner.size()));
        if (tree) break;
    }
    if (!tree) throw std::runtime_error("witness trace does not parse against the grammar");

    MarkedGraph mg = realizeTree(g, tree);
    mg.derivation = tree;
    SymGraph sg = symmetricClosure(mg);

    // Edge letters appear in derivation order, which is the realized graph's
    // edge order.
    std::vector<int32_t> edgeOf(word.size(), -1);
    uint32_t nextEdge = 0;
    for (size_t pos = 0; pos < word.size(); ++pos)
        if (!word[pos].trace.shared) edgeOf[pos] = static_cast<int32_t>(nextEdge++);
    if (nextEdge != mg.graph.edges.size())
        throw std::runtime_error("witness edge letters do not match the decoded graph");

    // Per-machine operations in time order (backward rows read right to
    // left), then interleaved by block number. Blocks are claimed by one
    // machine each and rise with time within a machine, so a stable order on
    // (block, per-machine time) is the global schedule.
    struct OpRec {
        uint8_t block = 0;
        uint32_t seq = 0;
        uint32_t machine = 0;
        EdgeId baseEdge = 0;
        int8_t dir = 1;
        SymId sym = 0;
        uint8_t read = 0, write = 0;
        StateId succ = 0;
    };
    std::vector<OpRec> recs;
    for (uint32_t n = 1; n <= b.m; ++n) {
        uint32_t seq = 0;
        for (uint32_t h = 0; h < rt; ++h) {
            uint32_t i = (n - 1) * rt + h;
            std::vector<OpRec> segRecs;
            for (size_t pos = 0; pos < word.size(); ++pos) {
                const CompositeLetter& l = word[pos];
                if (l.trace.shared) continue;
                if (l.exec.size() != t) throw std::runtime_error("malformed witness letter");
                const ExecRow& er = l.exec[i];
                if (er.block == 0 || er.traceRow < 1 || er.traceRow > t) continue;
                const TraceRow& trr = l.trace.rows[er.traceRow - 1];
                if (trr.label == kNoSym) continue;
                OpRec rec;
                rec.block = er.block;
                rec.machine = n;
                rec.baseEdge = mg.graph.edges[edgeOf[pos]].id;
                rec.dir = h % 2 == 0 ? 1 : -1;
                rec.sym = trr.label;
                rec.read = er.read;
                rec.write = er.write;
                rec.succ = er.succ;
                segRecs.push_back(rec);
            }
            if (h % 2) std::reverse(segRecs.begin(), segRecs.end());
            for (OpRec& rec : segRecs) {
                rec.seq = seq++;
                recs.push_back(rec);
            }
        }
    }
    std::stable_sort(recs.begin(), recs.end(), [](const OpRec& a, const OpRec& c) {
        return std::tie(a.block, a.seq) < std::tie(c.block, c.seq);
    });

    Run run;
    run.configs.push_back(initialConfiguration(sg, b.m, mach.initial));
    for (const OpRec& rec : recs) {
        bool moved = false;
        for (const Successor& sc : successors(sg, mach, run.configs.back(), rec.machine)) {
            const SymEdge& e = sg.edges[sc.edgeIdx];
            const Transition& d = mach.transitions[sc.transIdx];
            if (e.base != rec.baseEdge || e.dir != rec.dir) continue;
            if (d.sym != rec.sym || d.read != rec.read || d.write != rec.write ||
                d.q2 != rec.succ)
                continue;
            run.moves.push_back(Move{rec.machine, sc.edgeIdx, sc.transIdx});
            run.configs.push_back(sc.config);
            moved = true;
            break;
        }
        if (!moved) throw std::runtime_error("witness operation does not replay");
    }
    return {std::move(mg), std::move(run)};
}

Verdict decide(const Spgg& g, const Machine& mach, const Bounds& b, const ConfigProperty& f) {
    BudgetedSpgg lifted = liftGrammar(g, static_cast<uint8_t>(b.k));
    ReachabilityProduct prod(lifted, mach, b, f);
    std::optional<std::vector<CompositeLetter>> word = pdaEmptiness(prod);
    Verdict v;
    v.blockBound = b.p;
    if (!word) return v;
    auto [mg, run] = decodeWitness(*word, g, mach, b);
    SymGraph sg = symmetricClosure(mg);
    if (!replayRun(sg, mach, run)) throw std::runtime_error("witness replay failed");
    for (uint32_t c : reversalCounts(sg, mach, run))
        if (c > b.r) throw std::runtime_error("witness exceeds the reversal bound");
    if (!satisfies(run.configs.back(), f))
        throw std::runtime_error("witness does not reach the property");
    v.reachable = true;
    v.graph = std::move(mg);
    v.run = std::move(run);
    v.word = std::move(*word);
    return v;
}

Verdict decideWithRetry(const Spgg& g, const Machine& mach, Bounds b, const ConfigProperty& f,
                        uint32_t maxP) {
    if (maxP < b.p) maxP = b.p;
    Verdict v;
    for (uint32_t p = b.p; p <= maxP; ++p) {
        b.p = p;
        v = decide(g, mach, b, f);
        if (v.reachable) return v;
    }
    v.blockBound = maxP;
    return v;
}

}  // namespace spv
