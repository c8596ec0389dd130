#include "spv/property_nfa.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace spv {

PropertyContext letterContext(const CompositeLetter& l, const Bounds& b) {
    uint32_t t = b.t();
    PropertyContext c;
    c.rows.resize(t);
    for (uint32_t i = 0; i < t; ++i) {
        const ExecRow& er = l.exec[i];
        RowView& v = c.rows[i];
        v.p = er.block;
        v.q = er.succ;
        if (l.trace.shared) {
            v.sigma.shared = true;
            v.sigma.index = l.trace.indices[er.traceRow - 1];
        } else {
            v.sigma.shared = false;
            v.sigma.row = l.trace.rows[er.traceRow - 1];
        }
    }
    return c;
}

PropertyContext initialContext(const Bounds& b, StateId initial) {
    PropertyContext c;
    c.rows.resize(b.t());
    for (auto& v : c.rows) {
        v.p = 0;
        v.q = initial;
        v.sigma.shared = false;
        v.sigma.row = TraceRow{kNoSym, 0, 0, 1};
    }
    return c;
}

bool nodeProperty(const std::vector<StateId>& S, const PropertyContext& c1,
                  const PropertyContext* c2, const std::vector<uint32_t>& M,
                  const std::vector<uint8_t>& f, const Bounds& b) {
    size_t sz = M.size();
    if (sz == 0 || f.size() != sz || S.size() != sz) return false;
    uint32_t rt = b.rt();
    std::vector<uint8_t> p(sz);
    std::vector<StateId> q(sz);
    std::vector<const RowView*> v1(sz), v2(sz);
    for (size_t i = 0; i < sz; ++i) {
        if (f[i] < 1 || f[i] > rt || M[i] < 1 || M[i] > b.m) return false;
        uint32_t row = (M[i] - 1) * rt + (f[i] - 1);
        v1[i] = &c1.rows[row];
        v2[i] = c2 ? &c2->rows[row] : nullptr;
        if (f[i] % 2 == 1) {
            p[i] = v1[i]->p;
            q[i] = v1[i]->q;
        } else {
            if (!v2[i]) return false;  // the word has ended; only c1 is readable
            p[i] = v2[i]->p;
            q[i] = v2[i]->q;
        }
    }

    std::vector<StateId> qs = q;
    std::sort(qs.begin(), qs.end());
    std::vector<StateId> ss = S;
    std::sort(ss.begin(), ss.end());
    if (qs != ss) return false;

    // the machine shown last (largest block) dominates; every other machine
    // that moved at all must hold a smaller block, and be caught at a moment
    // its block changes so stale padding cannot stand in for it
    size_t n0 = 0;
    for (size_t i = 1; i < sz; ++i)
        if (p[i] > p[n0]) n0 = i;
    for (size_t i = 0; i < sz; ++i) {
        if (i == n0 || p[i] == 0) continue;
        if (p[i] >= p[n0]) return false;
        uint8_t before = v1[i]->p;
        uint8_t after = v2[i] ? v2[i]->p : 0;
        if (before == after) return false;
    }

    auto agree = [&](bool useSecond) {
        const RowSigma& s0 = (useSecond ? v2[n0] : v1[n0])->sigma;
        for (size_t i = 0; i < sz; ++i) {
            const RowSigma& si = (useSecond ? v2[i] : v1[i])->sigma;
            if (si.shared != s0.shared) return false;
            if (s0.shared) {
                if (si.index != s0.index) return false;
            } else {
                if (si.row.pathIndex != s0.row.pathIndex) return false;
            }
        }
        return true;
    };
    return agree(false) || (c2 && agree(true));
}

namespace {

// Sigma values of a stored context are only ever compared for equality
// between its own rows, so each row keeps just its equality class; the state
// a backward row carries is only ever read off the following letter, so the
// stored copy drops it.
void quotientContext(PropertyContext& c, uint32_t rt) {
    for (uint32_t i = 0; i < c.rows.size(); ++i)
        if ((i % rt) % 2 == 1) c.rows[i].q = 0;
    std::vector<RowSigma> reps;
    for (RowView& v : c.rows) {
        uint8_t cls = 0;
        while (cls < reps.size() && !(reps[cls] == v.sigma)) ++cls;
        if (cls == reps.size()) reps.push_back(v.sigma);
        bool sh = v.sigma.shared;
        v.sigma = RowSigma{};
        v.sigma.shared = sh;
        if (sh)
            v.sigma.index = cls;
        else
            v.sigma.row.pathIndex = cls;
    }
}

}  // namespace

PropertyNfa::PropertyNfa(ConfigProperty f, const Bounds& b, StateId initial)
    : f_(std::move(f)), b_(b), initial_(initial) {
    for (uint32_t i = 0; i < f_.nodes.size(); ++i)
        if (f_.nodes[i].kind == ConfigProperty::Node::Atom) atomNodes_.push_back(i);
}

uint32_t PropertyNfa::intern(const State& s) const {
    auto [it, fresh] = index_.emplace(s, static_cast<uint32_t>(pool_.size()));
    if (fresh) pool_.push_back(s);
    return it->second;
}

std::vector<uint32_t> PropertyNfa::initials() const {
    State s;
    s.prev = initialContext(b_, initial_);
    quotientContext(s.prev, b_.rt());
    s.maxBlock.assign(b_.m, 0);
    s.fired.assign(atomNodes_.size(), 0);
    s.storedP.assign(atomNodes_.size(), std::vector<uint8_t>(b_.m, 0xff));
    return {intern(s)};
}

std::vector<PropertyNfa::Detection> PropertyNfa::detections(const std::vector<StateId>& S,
                                                            const PropertyContext& c1,
                                                            const PropertyContext* c2) const {
    std::vector<Detection> out;
    size_t sz = S.size();
    if (sz == 0 || sz > b_.m) return out;
    std::vector<uint32_t> M;
    std::vector<uint8_t> f;
    std::function<void(uint32_t)> pick = [&](uint32_t from) {
        if (M.size() == sz) {
            std::function<void(size_t)> rows = [&](size_t i) {
                if (i == sz) {
                    if (nodeProperty(S, c1, c2, M, f, b_)) {
                        Detection d;
                        d.machines = M;
                        for (size_t j = 0; j < sz; ++j) {
                            uint32_t row = (M[j] - 1) * b_.rt() + (f[j] - 1);
                            d.blocks.push_back(f[j] % 2 == 1 ? c1.rows[row].p
                                                             : c2->rows[row].p);
                        }
                        out.push_back(std::move(d));
                    }
                    return;
                }
                for (uint8_t h = 1; h <= b_.rt(); ++h) {
                    if (!c2 && h % 2 == 0) continue;
                    f.push_back(h);
                    rows(i + 1);
                    f.pop_back();
                }
            };
            rows(0);
            return;
        }
        for (uint32_t n = from; n <= b_.m; ++n) {
            M.push_back(n);
            pick(n + 1);
            M.pop_back();
        }
    };
    pick(1);
    return out;
}

bool PropertyNfa::evalFormula(const std::vector<uint8_t>& atomOk) const {
    std::function<bool(uint32_t)> ev = [&](uint32_t idx) -> bool {
        const auto& n = f_.nodes[idx];
        switch (n.kind) {
            case ConfigProperty::Node::Atom: {
                for (size_t a = 0; a < atomNodes_.size(); ++a)
                    if (atomNodes_[a] == idx) return atomOk[a];
                return false;
            }
            case ConfigProperty::Node::And:
                return ev(n.left) && ev(n.right);
            case ConfigProperty::Node::Or:
                return ev(n.left) || ev(n.right);
        }
        return false;
    };
    return ev(f_.root);
}

std::vector<uint32_t> PropertyNfa::step(uint32_t s, const CompositeLetter& l) const {
    uint32_t t = b_.t();
    if (l.exec.size() != t) return {};
    for (const ExecRow& er : l.exec)
        if (er.traceRow < 1 || er.traceRow > t) return {};
    if (l.trace.shared ? l.trace.indices.size() != t : l.trace.rows.size() != t) return {};

    State st = pool_[s];  // copy: interning grows the pool
    PropertyContext cur = letterContext(l, b_);

    State base = st;
    base.prev = cur;
    quotientContext(base.prev, b_.rt());
    for (uint32_t n = 0; n < b_.m; ++n)
        for (uint32_t h = 0; h < b_.rt(); ++h) {
            uint8_t blk = l.exec[n * b_.rt() + h].block;
            if (blk > base.maxBlock[n]) base.maxBlock[n] = blk;
        }

    std::vector<std::vector<Detection>> opts(atomNodes_.size());
    for (size_t a = 0; a < atomNodes_.size(); ++a)
        if (!st.fired[a])
            opts[a] = detections(f_.nodes[atomNodes_[a]].atom, st.prev, &cur);

    // a fired detector whose recorded block already trails the machine's max
    // can never anchor at the run's end; drop states the formula cannot
    // recover from under the most optimistic view of the remaining detectors
    auto feasible = [&](const State& st2) {
        std::vector<uint8_t> ok(atomNodes_.size(), 1);
        for (size_t a = 0; a < atomNodes_.size(); ++a)
            if (st2.fired[a])
                for (uint32_t n = 0; n < b_.m; ++n)
                    if (st2.storedP[a][n] != 0xff && st2.storedP[a][n] < st2.maxBlock[n])
                        ok[a] = 0;
        return evalFormula(ok);
    };

    std::set<uint32_t> out;
    std::function<void(size_t, State&)> choose = [&](size_t a, State& acc) {
        if (a == atomNodes_.size()) {
            if (!feasible(acc)) return;
            bool allFired = true;
            for (uint8_t fb : acc.fired) allFired = allFired && fb;
            if (allFired) {
                // the stored context is only read by still-unfired detectors
                State done = acc;
                done.prev.rows.assign(b_.t(), RowView{});
                out.insert(intern(done));
                return;
            }
            out.insert(intern(acc));
            return;
        }
        choose(a + 1, acc);  // atom stays unfired here
        for (const Detection& d : opts[a]) {
            State next = acc;
            next.fired[a] = 1;
            for (size_t j = 0; j < d.machines.size(); ++j)
                next.storedP[a][d.machines[j] - 1] = d.blocks[j];
            choose(a + 1, next);
        }
    };
    choose(0, base);
    return {out.begin(), out.end()};
}

bool PropertyNfa::accepting(uint32_t s) const {
    const State st = pool_[s];
    std::vector<uint8_t> ok(atomNodes_.size(), 0);
    for (size_t a = 0; a < atomNodes_.size(); ++a) {
        if (st.fired[a]) {
            bool good = true;
            for (uint32_t n = 0; n < b_.m; ++n)
                if (st.storedP[a][n] != 0xff && st.storedP[a][n] != st.maxBlock[n])
                    good = false;
            ok[a] = good;
        } else {
            for (const Detection& d :
                 detections(f_.nodes[atomNodes_[a]].atom, st.prev, nullptr)) {
                bool good = true;
                for (size_t j = 0; j < d.machines.size(); ++j)
                    if (d.blocks[j] != st.maxBlock[d.machines[j] - 1]) good = false;
                if (good) {
                    ok[a] = 1;
                    break;
                }
            }
        }
    }
    return evalFormula(ok);
}

}  // namespace spv
