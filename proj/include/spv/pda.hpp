#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <stdexcept>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spv/nfa.hpp"

namespace spv {

// Pushdown automaton over input letters L and stack symbols G (G must be
// strictly ordered for interning). Acceptance is by bottom-of-stack: a word
// is accepted iff the machine can consume it ending with the stack holding
// exactly the bottom symbol, in a control state passing acceptingState().
// Like the NFA layer, transitions are generated lazily per (state, top) and
// alphabets are never materialized.
template <typename L, typename G>
class Pda {
  public:
    virtual ~Pda() = default;
    virtual std::vector<uint32_t> initials() const = 0;
    virtual bool acceptingState(uint32_t q) const { return true; }
    virtual G bottom() const = 0;
    // All rules (input or ε, next state, pushed string replacing the top;
    // push[0] becomes the new top) applicable with the given top symbol.
    virtual void expand(uint32_t q, const G& top,
                        const std::function<void(const std::optional<L>&, uint32_t,
                                                 const std::vector<G>&)>& yield) const = 0;
};

template <typename L, typename G>
class ExplicitPda : public Pda<L, G> {
  public:
    struct Rule {
        uint32_t from;
        std::optional<L> input;
        G top;
        uint32_t to;
        std::vector<G> push;
    };

    uint32_t states = 0;
    uint32_t init = 0;
    std::vector<uint32_t> acceptingStates;  // empty = all accepting
    G bottomSym{};
    std::vector<Rule> rules;

    std::vector<uint32_t> initials() const override { return {init}; }
    bool acceptingState(uint32_t q) const override {
        if (acceptingStates.empty()) return true;
        for (uint32_t a : acceptingStates)
            if (a == q) return true;
        return false;
    }
    G bottom() const override { return bottomSym; }
    void expand(uint32_t q, const G& top,
                const std::function<void(const std::optional<L>&, uint32_t,
                                         const std::vector<G>&)>& yield) const override {
        for (const auto& r : rules)
            if (r.from == q && r.top == top) yield(r.input, r.to, r.push);
    }
};

namespace detail {

// Saturation engine shared by membership (Pos = word position) and emptiness
// (Pos = unit). Derives pop facts "from state q with g on top, g can be
// removed ending in state q2" plus single-symbol-stack reachability facts.
// Witness recording (the letter and sub-fact backpointers needed to rebuild
// an accepted word) is optional; without it the run keeps only flat
// reachability records.
template <typename L, typename G, bool kPositioned>
class PdaSearch {
  public:
    PdaSearch(const Pda<L, G>& p, const std::vector<L>* w, bool witness)
        : p_(p), w_(w), witness_(witness) {}

    // Runs to exhaustion (or first accepting fact for emptiness mode) and
    // returns an accepting single-stack fact id, or -1.
    int64_t run() {
        uint32_t bot = internSym(p_.bottom());
        for (uint32_t q0 : p_.initials()) addRs(q0, bot, 0, kNone, kNone, kNone);
        size_t steps = 0;
        const char* statsEnv = std::getenv("SPV_PDA_STATS");
        size_t statsEvery = statsEnv ? std::strtoul(statsEnv, nullptr, 10) : 0;
        if (statsEnv && statsEvery == 0) statsEvery = 20000;
        while (!ctxQueue_.empty() || !rsQueue_.empty()) {
            if (statsEvery && ++steps % statsEvery == 0) printStats();
            if (!rsQueue_.empty()) {
                uint32_t id = rsQueue_.front();
                rsQueue_.pop_front();
                expandRs(id);
                if (accept_ >= 0 && !kPositioned) return accept_;
            } else {
                uint32_t c = ctxQueue_.front();
                ctxQueue_.pop_front();
                expandCtx(c);
            }
        }
        return accept_;
    }

    std::vector<L> witnessWord(int64_t rsId) const {
        std::vector<L> out;
        buildRsWord(static_cast<uint32_t>(rsId), out);
        return out;
    }

  private:
    static constexpr uint32_t kNone = UINT32_MAX;  // no letter / empty list
    static constexpr uint32_t kRsBit = uint32_t(1) << 31;

    struct Ctx {
        uint32_t q, g, i;  // i unused when !kPositioned (always 0)
    };
    struct PopFact {
        uint32_t ctx;
        uint32_t q2, i2;
        uint32_t input;  // letter id or kNone
        uint32_t subs;   // sub-fact chain id or kNone
    };
    struct Rs {  // reachable with stack exactly [g]
        uint32_t q, g, i;
        uint32_t parent;  // rs fact id or kNone
        uint32_t input;
        uint32_t subs;
    };
    // Continuation subscribed to one context's pops: the rest of a parent
    // rule's push after the popped prefix, plus witness bookkeeping. The
    // owner (pop ctx id, or parent rs fact id when the tag bit is set) and
    // the interned letter and suffix keep a waiter a small flat record.
    struct Waiter {
        uint32_t ownerTag;
        uint32_t input;   // letter id or kNone
        uint32_t suffix;  // interned symbol list still to pop, kNone = empty
        uint32_t subs;    // sub-fact chain id or kNone
    };
    struct Link {  // arena node of a per-context singly linked list
        uint32_t id;
        uint32_t next;
    };

    static uint64_t packKey(uint32_t q, uint32_t g, uint32_t i) {
        if (g > 0xffff || i > 0xffff)
            throw std::length_error("stack alphabet or word too large to index");
        return (uint64_t(q) << 32) | (uint64_t(g) << 16) | i;
    }

    uint32_t internSym(const G& g) {
        auto [it, fresh] = symIndex_.emplace(g, static_cast<uint32_t>(syms_.size()));
        if (fresh) syms_.push_back(g);
        return it->second;
    }
    uint32_t internLetter(const std::optional<L>& in) {
        if (!witness_ || !in) return kNone;
        auto [it, fresh] = letterIndex_.emplace(*in, static_cast<uint32_t>(letters_.size()));
        if (fresh) letters_.push_back(*in);
        return it->second;
    }
    uint32_t internSuffix(const std::vector<G>& push) {
        uint32_t s = kNone;
        for (auto it = push.rbegin(); it != push.rend(); ++it) {
            auto key = std::make_pair(internSym(*it), s);
            auto [mi, fresh] =
                suffixIndex_.emplace(key, static_cast<uint32_t>(suffixes_.size()));
            if (fresh) suffixes_.push_back(key);
            s = mi->second;
        }
        return s;
    }
    uint32_t internCtx(uint32_t q, uint32_t g, uint32_t i) {
        auto [it, fresh] =
            ctxIndex_.emplace(packKey(q, g, i), static_cast<uint32_t>(ctxs_.size()));
        if (fresh) {
            ctxs_.push_back(Ctx{q, g, i});
            waiterHead_.push_back(kNone);
            factHead_.push_back(kNone);
            ctxQueue_.push_back(it->second);
        }
        return it->second;
    }
    uint32_t pushSub(uint32_t fid, uint32_t subs) {
        if (!witness_) return kNone;
        subChain_.push_back({fid, subs});
        return static_cast<uint32_t>(subChain_.size() - 1);
    }

    void expandCtx(uint32_t cid) {
        Ctx c = ctxs_[cid];
        // copy: interning new symbols during the expansion may grow syms_
        const G top = syms_[c.g];
        p_.expand(c.q, top, [&](const std::optional<L>& in, uint32_t q1,
                                const std::vector<G>& push) {
            uint32_t i1 = c.i;
            if (in) {
                if (!kPositioned) {
                    // letters are free in emptiness mode
                } else if (w_ && c.i < w_->size() && (*w_)[c.i] == *in) {
                    i1 = c.i + 1;
                } else {
                    return;
                }
            }
            chain(Waiter{cid, internLetter(in), internSuffix(push), kNone}, q1, i1);
        });
    }

    void chain(Waiter wt, uint32_t q, uint32_t i) {
        if (wt.suffix == kNone) {
            if (wt.ownerTag & kRsBit) {
                // exhausted the push entirely: stack would be empty — dead
                return;
            }
            addPop(wt.ownerTag, q, i, wt.input, wt.subs);
            return;
        }
        auto [head, tail] = suffixes_[wt.suffix];
        if ((wt.ownerTag & kRsBit) && tail == kNone) {
            addRs(q, head, i, wt.ownerTag & ~kRsBit, wt.input, wt.subs);
            return;
        }
        uint32_t sub = internCtx(q, head, i);
        wt.suffix = tail;
        // a continuation derives the same facts regardless of the witness
        // bookkeeping it carries, so one copy per (owner, input, suffix) does
        for (uint32_t n = waiterHead_[sub]; n != kNone; n = waiterArena_[n].next) {
            const Waiter& o = waiters_[waiterArena_[n].id];
            if (o.ownerTag == wt.ownerTag && o.input == wt.input && o.suffix == wt.suffix)
                return;
        }
        // subscribe, then replay the facts present just before; facts derived
        // during the replay recursion reach this waiter through their own
        // addPop call, so each fact is delivered exactly once
        uint32_t fh = factHead_[sub];
        uint32_t wid = static_cast<uint32_t>(waiters_.size());
        waiters_.push_back(wt);
        waiterArena_.push_back({wid, waiterHead_[sub]});
        waiterHead_[sub] = static_cast<uint32_t>(waiterArena_.size() - 1);
        for (uint32_t n = fh; n != kNone;) {
            uint32_t fid = factArena_[n].id;
            n = factArena_[n].next;  // the arenas may grow during the recursion
            Waiter w2 = wt;
            w2.subs = pushSub(fid, wt.subs);
            chain(w2, pops_[fid].q2, pops_[fid].i2);
        }
    }

    void addPop(uint32_t ctx, uint32_t q2, uint32_t i2, uint32_t input, uint32_t subs) {
        for (uint32_t n = factHead_[ctx]; n != kNone; n = factArena_[n].next) {
            const PopFact& f = pops_[factArena_[n].id];
            if (f.q2 == q2 && f.i2 == i2) return;
        }
        uint32_t fid = static_cast<uint32_t>(pops_.size());
        pops_.push_back(PopFact{ctx, q2, i2, input, subs});
        factArena_.push_back({fid, factHead_[ctx]});
        factHead_[ctx] = static_cast<uint32_t>(factArena_.size() - 1);
        // waiters subscribing during the recursion see this fact when they
        // replay, so only the ones present now need a delivery
        for (uint32_t n = waiterHead_[ctx]; n != kNone;) {
            uint32_t wid = waiterArena_[n].id;
            n = waiterArena_[n].next;
            Waiter w2 = waiters_[wid];
            w2.subs = pushSub(fid, w2.subs);
            chain(w2, q2, i2);
        }
    }

    void addRs(uint32_t q, uint32_t g, uint32_t i, uint32_t parent, uint32_t input,
               uint32_t subs) {
        if (!rsSeen_.insert(packKey(q, g, i)).second) return;
        uint32_t fid = static_cast<uint32_t>(rss_.size());
        rss_.push_back(Rs{q, g, i, parent, input, subs});
        rsQueue_.push_back(fid);
        if (g == 0 && p_.acceptingState(q)) {  // 0 = bottom (interned first)
            bool done = !kPositioned || !w_ || i == w_->size();
            if (done && accept_ < 0) accept_ = fid;
        }
    }

    void expandRs(uint32_t fid) {
        Rs r = rss_[fid];
        // copy: interning new symbols during the expansion may grow syms_
        const G top = syms_[r.g];
        p_.expand(r.q, top, [&](const std::optional<L>& in, uint32_t q1,
                                const std::vector<G>& push) {
            uint32_t i1 = r.i;
            if (in) {
                if (!kPositioned) {
                } else if (w_ && r.i < w_->size() && (*w_)[r.i] == *in) {
                    i1 = r.i + 1;
                } else {
                    return;
                }
            }
            chain(Waiter{fid | kRsBit, internLetter(in), internSuffix(push), kNone}, q1, i1);
        });
    }

    // Sub-fact chains list the most recently attached fact first.
    std::vector<uint32_t> subList(uint32_t subs) const {
        std::vector<uint32_t> out;
        for (uint32_t s = subs; s != kNone; s = subChain_[s].second)
            out.push_back(subChain_[s].first);
        std::reverse(out.begin(), out.end());
        return out;
    }
    void buildPopWord(uint32_t fid, std::vector<L>& out) const {
        const PopFact& f = pops_[fid];
        if (f.input != kNone) out.push_back(letters_[f.input]);
        for (uint32_t s : subList(f.subs)) buildPopWord(s, out);
    }
    void buildRsWord(uint32_t fid, std::vector<L>& out) const {
        const Rs& r = rss_[fid];
        if (r.parent != kNone) buildRsWord(r.parent, out);
        if (r.input != kNone) out.push_back(letters_[r.input]);
        for (uint32_t s : subList(r.subs)) buildPopWord(s, out);
    }

    void printStats() const {
        long rssKb = 0;
        if (FILE* f = std::fopen("/proc/self/status", "r")) {
            char line[256];
            while (std::fgets(line, sizeof line, f))
                if (std::sscanf(line, "VmRSS: %ld", &rssKb) == 1) break;
            std::fclose(f);
        }
        std::fprintf(stderr,
                     "pda: ctxs=%zu pops=%zu rs=%zu syms=%zu letters=%zu "
                     "queue=%zu/%zu waiters=%zu rssMB=%ld\n",
                     ctxs_.size(), pops_.size(), rss_.size(), syms_.size(),
                     letters_.size(), ctxQueue_.size(), rsQueue_.size(), waiters_.size(),
                     rssKb / 1024);
    }

    const Pda<L, G>& p_;
    const std::vector<L>* w_;
    bool witness_;
    std::vector<G> syms_;
    std::map<G, uint32_t> symIndex_;
    std::vector<L> letters_;
    std::map<L, uint32_t> letterIndex_;
    std::vector<std::pair<uint32_t, uint32_t>> suffixes_;  // (symbol, next suffix)
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> suffixIndex_;
    std::vector<Ctx> ctxs_;
    std::unordered_map<uint64_t, uint32_t> ctxIndex_;
    std::vector<Waiter> waiters_;
    std::vector<Link> waiterArena_;        // per-ctx waiter lists
    std::vector<uint32_t> waiterHead_;     // per ctx
    std::vector<Link> factArena_;          // per-ctx fact lists
    std::vector<uint32_t> factHead_;       // per ctx
    std::vector<PopFact> pops_;
    std::vector<Rs> rss_;
    std::unordered_set<uint64_t> rsSeen_;
    std::vector<std::pair<uint32_t, uint32_t>> subChain_;  // (fact, rest of chain)
    std::deque<uint32_t> ctxQueue_;
    std::deque<uint32_t> rsQueue_;
    int64_t accept_ = -1;
};

}  // namespace detail

template <typename L, typename G>
bool pdaAccepts(const Pda<L, G>& p, const std::vector<L>& w) {
    detail::PdaSearch<L, G, true> s(p, &w, false);
    return s.run() >= 0;
}

// Returns some accepted word if the language is nonempty. The first pass
// skips witness bookkeeping — an empty language pays nothing for it — and a
// nonempty answer is rerun with recording on to rebuild the word.
template <typename L, typename G>
std::optional<std::vector<L>> pdaEmptiness(const Pda<L, G>& p) {
    detail::PdaSearch<L, G, false> probe(p, nullptr, false);
    if (probe.run() < 0) return std::nullopt;
    detail::PdaSearch<L, G, false> s(p, nullptr, true);
    int64_t id = s.run();
    if (id < 0) throw std::logic_error("nonempty language lost on witness rerun");
    return s.witnessWord(id);
}

// Intersection with an NFA: control states are interned (pda state, nfa
// state) pairs; ε-rules leave the NFA component untouched.
template <typename L, typename G>
class PdaNfaProduct : public Pda<L, G> {
  public:
    PdaNfaProduct(const Pda<L, G>& p, const Nfa<L>& a) : p_(p), a_(a) {}

    std::vector<uint32_t> initials() const override {
        std::vector<uint32_t> out;
        for (uint32_t q : p_.initials())
            for (uint32_t s : a_.initials()) out.push_back(intern(q, s));
        return out;
    }
    bool acceptingState(uint32_t q) const override {
        auto [pq, as] = pool_[q];
        return p_.acceptingState(pq) && a_.accepting(as);
    }
    G bottom() const override { return p_.bottom(); }
    void expand(uint32_t q, const G& top,
                const std::function<void(const std::optional<L>&, uint32_t,
                                         const std::vector<G>&)>& yield) const override {
        auto [pq, as] = pool_[q];
        p_.expand(pq, top, [&](const std::optional<L>& in, uint32_t q1,
                               const std::vector<G>& push) {
            if (!in) {
                yield(in, intern(q1, as), push);
                return;
            }
            for (uint32_t s2 : a_.step(as, *in)) yield(in, intern(q1, s2), push);
        });
    }

  private:
    uint32_t intern(uint32_t pq, uint32_t as) const {
        auto [it, fresh] = index_.emplace(std::make_pair(pq, as),
                                          static_cast<uint32_t>(pool_.size()));
        if (fresh) pool_.push_back({pq, as});
        return it->second;
    }

    const Pda<L, G>& p_;
    const Nfa<L>& a_;
    mutable std::vector<std::pair<uint32_t, uint32_t>> pool_;
    mutable std::map<std::pair<uint32_t, uint32_t>, uint32_t> index_;
};

}  // namespace spv
