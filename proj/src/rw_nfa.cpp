#include "spv/rw_nfa.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace spv {

namespace {

using ValList = std::vector<std::pair<uint8_t, uint8_t>>;

void record(ValList& v, uint8_t b, uint8_t val) {
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(b, uint8_t(0)),
                               [](auto& x, auto& y) { return x.first < y.first; });
    v.insert(it, {b, val});
}

std::optional<uint8_t> take(ValList& v, uint8_t b) {
    for (auto it = v.begin(); it != v.end(); ++it)
        if (it->first == b) {
            uint8_t val = it->second;
            v.erase(it);
            return val;
        }
    return std::nullopt;
}

// Match a block's start valuation against the previous block's end valuation
// as soon as both are known; block 1 starts with all registers zero.
bool dischargeStart(RwConfig& c, uint8_t b) {
    auto sv = take(c.startVal, b);
    if (!sv) return true;  // nothing recorded (should not happen)
    if (b == 1) return *sv == 0;
    auto ev = take(c.endVal, static_cast<uint8_t>(b - 1));
    if (!ev) {
        record(c.startVal, b, *sv);  // wait for the neighbour
        return true;
    }
    return *sv == *ev;
}

bool dischargeEnd(RwConfig& c, uint8_t b) {
    auto sv = take(c.startVal, static_cast<uint8_t>(b + 1));
    if (!sv) return true;
    auto ev = take(c.endVal, b);
    if (!ev) return true;  // unreachable: just recorded
    return *sv == *ev;
}

}  // namespace

RwNfa::RwNfa(const Bounds& b) : m_(b.m), rt_(b.rt()), t_(b.t()), k_(b.k), p_(b.p) {
    if (p_ > 64) throw std::runtime_error("block bound above 64 is not supported");
}

uint32_t RwNfa::intern(const RwConfig& c) const {
    auto [it, fresh] = index_.emplace(c, static_cast<uint32_t>(pool_.size()));
    if (fresh) pool_.push_back(c);
    return it->second;
}

std::vector<uint32_t> RwNfa::initials() const {
    RwConfig c;
    c.rows.resize(t_);
    return {intern(c)};
}

namespace {

// End the block a row is simulating: a forward row has reached the block's
// end valuation, a backward row its start valuation.
bool finishBlock(RwConfig& c, uint32_t i, bool fwd) {
    RwRow& row = c.rows[i];
    uint8_t b = row.openBlock, beta = row.beta;
    row.openBlock = 0;
    row.beta = 0;
    if (fwd) {
        record(c.endVal, b, beta);
        return dischargeEnd(c, b);
    }
    record(c.startVal, b, beta);
    return dischargeStart(c, b);
}

bool applyOp(uint8_t& beta, uint8_t j, uint8_t read, uint8_t write, bool fwd) {
    if (j == 0) return read == 0 && write == 0;
    uint8_t bit = (beta >> (j - 1)) & 1;
    if (fwd) {
        if (read != bit) return false;
        beta = static_cast<uint8_t>((beta & ~(1u << (j - 1))) | (write << (j - 1)));
    } else {
        if (write != bit) return false;
        beta = static_cast<uint8_t>((beta & ~(1u << (j - 1))) | (read << (j - 1)));
    }
    return true;
}

}  // namespace

bool RwNfa::accepting(uint32_t s) const {
    RwConfig c = pool_[s];
    for (uint32_t i = 0; i < t_; ++i)
        if (c.rows[i].openBlock != 0 && !finishBlock(c, i, (i % rt_) % 2 == 0))
            return false;
    if (!c.startVal.empty()) return false;
    if (!(c.endVal.empty() ||
          (c.endVal.size() == 1 && c.endVal[0].first == c.maxBlock)))
        return false;
    uint64_t all = c.maxBlock == 64 ? ~uint64_t(0)
                                    : ((uint64_t(1) << c.maxBlock) - 1);
    return c.owned == all;
}

std::vector<uint32_t> RwNfa::step(uint32_t s, const CompositeLetter& l) const {
    struct Op {
        uint32_t i;
        uint8_t b, j, read, write;
        bool fwd;
    };
    std::vector<Op> ops;
    if (!l.trace.shared && l.exec.size() == t_) {
        for (uint32_t i = 0; i < t_; ++i) {
            const ExecRow& er = l.exec[i];
            if (er.block == 0 || er.traceRow < 1 || er.traceRow > t_) continue;
            const TraceRow& tr = l.trace.rows[er.traceRow - 1];
            if (tr.label == kNoSym) continue;
            bool fwd = (i % rt_) % 2 == 0;
            uint8_t j = fwd ? tr.srcReg : tr.trgReg;
            if (j > k_) return {};
            ops.push_back({i, er.block, j, er.read, er.write, fwd});
        }
    } else if (l.exec.size() != t_) {
        return {};
    }

    std::set<uint32_t> out;
    RwConfig start = pool_[s];  // copy: interning grows the pool
    std::function<void(size_t, const RwConfig&)> rec = [&](size_t idx, const RwConfig& c) {
        if (idx == ops.size()) {
            out.insert(intern(c));
            return;
        }
        const Op& op = ops[idx];
        if (c.rows[op.i].openBlock == op.b) {
            RwConfig c2 = c;
            if (applyOp(c2.rows[op.i].beta, op.j, op.read, op.write, op.fwd))
                rec(idx + 1, c2);
            return;
        }
        RwConfig base = c;
        if (base.rows[op.i].openBlock != 0 && !finishBlock(base, op.i, op.fwd)) return;
        // claim the block: unclaimed, within bound, rising along forward rows
        // and falling along backward rows, ordered by row inside the machine
        if (op.b > p_ || (base.owned >> (op.b - 1)) & 1) return;
        RwRow& row = base.rows[op.i];
        if (op.fwd ? row.usedMax >= op.b
                   : (row.usedMin != 0 && row.usedMin <= op.b))
            return;
        uint32_t mBase = (op.i / rt_) * rt_;
        for (uint32_t i2 = mBase; i2 < mBase + rt_; ++i2) {
            if (i2 < op.i && base.rows[i2].usedMax >= op.b) return;
            if (i2 > op.i && base.rows[i2].usedMin != 0 && base.rows[i2].usedMin <= op.b)
                return;
        }
        base.owned |= uint64_t(1) << (op.b - 1);
        base.maxBlock = std::max(base.maxBlock, op.b);
        // a row's bounds are only read by itself (the direction's own bound)
        // and by the claim checks of earlier/later rows; skip the unread ones
        uint32_t ri = op.i % rt_;
        if (ri % 2 == 0 || ri + 1 < rt_) row.usedMax = std::max(row.usedMax, op.b);
        if ((ri % 2 == 1 || ri > 0) && (row.usedMin == 0 || op.b < row.usedMin))
            row.usedMin = op.b;
        row.openBlock = op.b;
        for (uint8_t guess = 0; guess < (1u << k_); ++guess) {
            RwConfig c2 = base;
            c2.rows[op.i].beta = guess;
            if (op.fwd) {
                record(c2.startVal, op.b, guess);
                if (!dischargeStart(c2, op.b)) continue;
            } else {
                record(c2.endVal, op.b, guess);
                if (!dischargeEnd(c2, op.b)) continue;
            }
            if (!applyOp(c2.rows[op.i].beta, op.j, op.read, op.write, op.fwd)) continue;
            rec(idx + 1, c2);
        }
    };
    rec(0, start);
    return {out.begin(), out.end()};
}

}  // namespace spv
