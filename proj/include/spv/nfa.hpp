#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace spv {

// Nondeterministic finite automaton over letter type L, with lazily
// materialized states addressed by opaque handles. The endmarker steps of the
// acceptance definition are folded into the interface: initials() is the
// state set after reading the left endmarker, accepting(s) holds when reading
// the right endmarker from s can reach an accepting control state. Alphabets
// are never materialized; letters flow in from the caller (step) or out of
// the automaton (enumerate, optional).
template <typename L>
class Nfa {
  public:
    virtual ~Nfa() = default;
    virtual std::vector<uint32_t> initials() const = 0;
    virtual bool accepting(uint32_t s) const = 0;
    virtual std::vector<uint32_t> step(uint32_t s, const L& a) const = 0;
    // Enumerate outgoing (letter, successor) pairs, if this automaton can
    // drive letter generation. Returns false when unsupported.
    virtual bool enumerate(uint32_t /*s*/,
                           const std::function<void(const L&, uint32_t)>& /*f*/) const {
        return false;
    }
};

// Dense automaton with an explicit transition list.
template <typename L>
class ExplicitNfa : public Nfa<L> {
  public:
    struct Trans {
        uint32_t from;
        L letter;
        uint32_t to;
    };

    uint32_t stateCount = 0;
    std::vector<uint32_t> initialStates;
    std::vector<uint32_t> acceptingStates;
    std::vector<Trans> trans;

    std::vector<uint32_t> initials() const override { return initialStates; }
    bool accepting(uint32_t s) const override {
        for (uint32_t a : acceptingStates)
            if (a == s) return true;
        return false;
    }
    std::vector<uint32_t> step(uint32_t s, const L& a) const override {
        std::vector<uint32_t> out;
        for (const auto& t : trans)
            if (t.from == s && t.letter == a) out.push_back(t.to);
        return out;
    }
    bool enumerate(uint32_t s, const std::function<void(const L&, uint32_t)>& f) const override {
        for (const auto& t : trans)
            if (t.from == s) f(t.letter, t.to);
        return true;
    }
};

template <typename L>
bool nfaAccepts(const Nfa<L>& a, const std::vector<L>& w) {
    std::unordered_set<uint32_t> cur;
    for (uint32_t s : a.initials()) cur.insert(s);
    for (const L& x : w) {
        std::unordered_set<uint32_t> nxt;
        for (uint32_t s : cur)
            for (uint32_t s2 : a.step(s, x)) nxt.insert(s2);
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    for (uint32_t s : cur)
        if (a.accepting(s)) return true;
    return false;
}

// Lazy intersection: states are interned tuples of component states. Letter
// generation is driven by the first component (its enumerate must work);
// step works regardless.
template <typename L>
class ProductNfa : public Nfa<L> {
  public:
    explicit ProductNfa(std::vector<const Nfa<L>*> parts) : parts_(std::move(parts)) {}

    std::vector<uint32_t> initials() const override {
        std::vector<std::vector<uint32_t>> tuples{{}};
        for (const auto* p : parts_) {
            std::vector<std::vector<uint32_t>> next;
            for (const auto& t : tuples)
                for (uint32_t s : p->initials()) {
                    auto t2 = t;
                    t2.push_back(s);
                    next.push_back(std::move(t2));
                }
            tuples = std::move(next);
        }
        std::vector<uint32_t> out;
        for (auto& t : tuples) out.push_back(intern(t));
        return out;
    }
    bool accepting(uint32_t s) const override {
        const auto& t = tuple(s);
        for (size_t i = 0; i < parts_.size(); ++i)
            if (!parts_[i]->accepting(t[i])) return false;
        return true;
    }
    std::vector<uint32_t> step(uint32_t s, const L& a) const override {
        std::vector<std::vector<uint32_t>> tuples{{}};
        const auto& cur = tuple(s);
        for (size_t i = 0; i < parts_.size(); ++i) {
            std::vector<std::vector<uint32_t>> next;
            auto succ = parts_[i]->step(cur[i], a);
            for (const auto& t : tuples)
                for (uint32_t x : succ) {
                    auto t2 = t;
                    t2.push_back(x);
                    next.push_back(std::move(t2));
                }
            tuples = std::move(next);
        }
        std::vector<uint32_t> out;
        for (auto& t : tuples) out.push_back(intern(t));
        return out;
    }
    bool enumerate(uint32_t s, const std::function<void(const L&, uint32_t)>& f) const override {
        const auto cur = tuple(s);  // copy: interning below may grow the pool
        return parts_[0]->enumerate(cur[0], [&](const L& a, uint32_t first) {
            std::vector<std::vector<uint32_t>> tuples{{first}};
            for (size_t i = 1; i < parts_.size(); ++i) {
                std::vector<std::vector<uint32_t>> next;
                auto succ = parts_[i]->step(cur[i], a);
                for (const auto& t : tuples)
                    for (uint32_t x : succ) {
                        auto t2 = t;
                        t2.push_back(x);
                        next.push_back(std::move(t2));
                    }
                tuples = std::move(next);
                if (tuples.empty()) return;
            }
            for (auto& t : tuples) f(a, intern(t));
        });
    }

  private:
    uint32_t intern(const std::vector<uint32_t>& t) const {
        auto [it, fresh] = index_.emplace(t, static_cast<uint32_t>(pool_.size()));
        if (fresh) pool_.push_back(t);
        return it->second;
    }
    const std::vector<uint32_t>& tuple(uint32_t s) const { return pool_[s]; }

    std::vector<const Nfa<L>*> parts_;
    mutable std::vector<std::vector<uint32_t>> pool_;
    mutable std::map<std::vector<uint32_t>, uint32_t> index_;
};

}  // namespace spv
