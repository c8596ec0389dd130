#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <queue>
#include <set>

#include "spv/nfa.hpp"

namespace spv {

// Two-way NFA over letter type L. The head walks on the bordered tape
// ⊢ w ⊣; acceptance = reaching an accepting control state while stepping off
// either end of the bordered tape.
template <typename L>
class TwoNfa {
  public:
    enum class Cell : uint8_t { LeftEnd, RightEnd, Letter };

    virtual ~TwoNfa() = default;
    virtual uint32_t stateCount() const = 0;
    virtual uint32_t initial() const = 0;
    virtual bool acceptingState(uint32_t q) const = 0;
    // All (next state, direction) moves from q on the given tape cell;
    // letter is non-null only for Cell::Letter.
    virtual void moves(uint32_t q, Cell cell, const L* letter,
                       const std::function<void(uint32_t, int8_t)>& yield) const = 0;
    // True when every move goes right; enables the trivial NFA view.
    virtual bool oneWay() const { return false; }
};

template <typename L>
class ExplicitTwoNfa : public TwoNfa<L> {
  public:
    using Cell = typename TwoNfa<L>::Cell;
    struct Trans {
        uint32_t from;
        Cell cell;
        L letter;  // meaningful only when cell == Letter
        uint32_t to;
        int8_t dir;
    };

    uint32_t states = 0;
    uint32_t init = 0;
    std::vector<uint32_t> acceptingStates;
    std::vector<Trans> trans;

    uint32_t stateCount() const override { return states; }
    uint32_t initial() const override { return init; }
    bool acceptingState(uint32_t q) const override {
        for (uint32_t a : acceptingStates)
            if (a == q) return true;
        return false;
    }
    void moves(uint32_t q, Cell cell, const L* letter,
               const std::function<void(uint32_t, int8_t)>& yield) const override {
        for (const auto& t : trans) {
            if (t.from != q || t.cell != cell) continue;
            if (cell == Cell::Letter && !(t.letter == *letter)) continue;
            yield(t.to, t.dir);
        }
    }
    bool oneWay() const override {
        for (const auto& t : trans)
            if (t.dir != 1) return false;
        return true;
    }
};

// Direct simulation: breadth-first search over (state, head position) on the
// bordered tape. Position 0 = left endmarker, n+1 = right endmarker;
// positions -1 / n+2 mean the head fell off and the run stops.
template <typename L>
bool twoNfaAccepts(const TwoNfa<L>& a, const std::vector<L>& w) {
    using Cell = typename TwoNfa<L>::Cell;
    int n = static_cast<int>(w.size());
    std::set<std::pair<uint32_t, int>> seen;
    std::queue<std::pair<uint32_t, int>> q;
    q.push({a.initial(), 0});
    seen.insert({a.initial(), 0});
    bool accepted = false;
    while (!q.empty() && !accepted) {
        auto [st, pos] = q.front();
        q.pop();
        Cell cell = pos == 0 ? Cell::LeftEnd : pos == n + 1 ? Cell::RightEnd : Cell::Letter;
        const L* letter = cell == Cell::Letter ? &w[pos - 1] : nullptr;
        a.moves(st, cell, letter, [&](uint32_t nxt, int8_t d) {
            int p2 = pos + d;
            if (p2 < 0 || p2 > n + 1) {
                if (a.acceptingState(nxt)) accepted = true;
                return;
            }
            if (seen.insert({nxt, p2}).second) q.push({nxt, p2});
        });
    }
    return accepted;
}

namespace detail {

// Boundary behavior tables for the crossing construction: for the prefix read
// so far, T[q] = states in which the head, entering the prefix's last cell in
// q, eventually crosses the right boundary; Lx[q] = the same entry can fall
// off the left end accepting; F = right-crossing states reachable from the
// initial configuration; g = the initial configuration can fall off the left
// end accepting. All sets are bitmasks (state count ≤ 64).
struct BoundaryTables {
    std::vector<uint64_t> T;
    uint64_t Lx = 0;
    uint64_t F = 0;
    bool g = false;

    auto operator<=>(const BoundaryTables&) const = default;
};

}  // namespace detail

// Language-equivalent one-way view of a 2NFA. One-way inputs are wrapped
// directly (states unchanged); genuinely two-way inputs go through the
// boundary-table construction, whose states may be exponential in the input's
// state count (requires ≤ 64 states).
template <typename L>
class TwoNfaAsNfa : public Nfa<L> {
    using Cell = typename TwoNfa<L>::Cell;

  public:
    explicit TwoNfaAsNfa(std::shared_ptr<const TwoNfa<L>> a) : a_(std::move(a)) {
        oneWay_ = a_->oneWay();
        assert(oneWay_ || a_->stateCount() <= 64);
    }

    std::vector<uint32_t> initials() const override {
        if (oneWay_) {
            std::vector<uint32_t> out;
            a_->moves(a_->initial(), Cell::LeftEnd, nullptr,
                      [&](uint32_t q, int8_t) { out.push_back(q); });
            return out;
        }
        uint32_t n = a_->stateCount();
        detail::BoundaryTables t;
        t.T.assign(n, 0);
        for (uint32_t q = 0; q < n; ++q)
            a_->moves(q, Cell::LeftEnd, nullptr, [&](uint32_t q2, int8_t d) {
                if (d == 1)
                    t.T[q] |= uint64_t(1) << q2;
                else if (a_->acceptingState(q2))
                    t.Lx |= uint64_t(1) << q;
            });
        t.F = t.T[a_->initial()];
        t.g = (t.Lx >> a_->initial()) & 1;
        return {intern(t)};
    }

    bool accepting(uint32_t s) const override {
        if (oneWay_) {
            bool acc = false;
            a_->moves(s, Cell::RightEnd, nullptr, [&](uint32_t q, int8_t d) {
                if (d == 1 && a_->acceptingState(q)) acc = true;
            });
            return acc;
        }
        detail::BoundaryTables t = advance(pool_[s], Cell::RightEnd, nullptr);
        if (t.g) return true;
        for (uint32_t q = 0; q < a_->stateCount(); ++q)
            if (((t.F >> q) & 1) && a_->acceptingState(q)) return true;
        return false;
    }

    std::vector<uint32_t> step(uint32_t s, const L& x) const override {
        if (oneWay_) {
            std::vector<uint32_t> out;
            a_->moves(s, Cell::Letter, &x, [&](uint32_t q, int8_t) { out.push_back(q); });
            return out;
        }
        return {intern(advance(pool_[s], Cell::Letter, &x))};
    }

  private:
    detail::BoundaryTables advance(const detail::BoundaryTables& prev, Cell cell,
                                   const L* letter) const {
        uint32_t n = a_->stateCount();
        detail::BoundaryTables t;
        t.T.assign(n, 0);
        // mutual fixpoint: a left move re-enters the previous prefix, whose
        // behavior tables splice the trajectory back at this cell
        bool changed = true;
        while (changed) {
            changed = false;
            for (uint32_t q = 0; q < n; ++q) {
                uint64_t addT = 0;
                bool addLx = false;
                a_->moves(q, cell, letter, [&](uint32_t q2, int8_t d) {
                    if (d == 1) {
                        addT |= uint64_t(1) << q2;
                        return;
                    }
                    if ((prev.Lx >> q2) & 1) addLx = true;
                    uint64_t back = prev.T[q2];  // re-entries at this cell
                    for (uint32_t q3 = 0; q3 < n; ++q3)
                        if ((back >> q3) & 1) {
                            addT |= t.T[q3];
                            if ((t.Lx >> q3) & 1) addLx = true;
                        }
                });
                if ((t.T[q] | addT) != t.T[q]) {
                    t.T[q] |= addT;
                    changed = true;
                }
                if (addLx && !((t.Lx >> q) & 1)) {
                    t.Lx |= uint64_t(1) << q;
                    changed = true;
                }
            }
        }
        t.g = prev.g;
        for (uint32_t q = 0; q < n; ++q)
            if ((prev.F >> q) & 1) {
                t.F |= t.T[q];
                if ((t.Lx >> q) & 1) t.g = true;
            }
        return t;
    }

    uint32_t intern(const detail::BoundaryTables& t) const {
        auto [it, fresh] = index_.emplace(t, static_cast<uint32_t>(pool_.size()));
        if (fresh) pool_.push_back(t);
        return it->second;
    }

    std::shared_ptr<const TwoNfa<L>> a_;
    bool oneWay_ = false;
    mutable std::vector<detail::BoundaryTables> pool_;
    mutable std::map<detail::BoundaryTables, uint32_t> index_;
};

template <typename L>
std::unique_ptr<Nfa<L>> twoNfaToNfa(std::shared_ptr<const TwoNfa<L>> a) {
    return std::make_unique<TwoNfaAsNfa<L>>(std::move(a));
}

}  // namespace spv
