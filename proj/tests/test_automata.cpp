#include <array>
#include <random>

#include "doctest.h"
#include "spv/nfa.hpp"
#include "spv/pda.hpp"
#include "spv/two_nfa.hpp"

using namespace spv;

namespace {

using Word = std::vector<int>;

std::vector<Word> allWords(int alphabet, int maxLen) {
    std::vector<Word> out{{}};
    std::vector<Word> layer{{}};
    for (int l = 0; l < maxLen; ++l) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int a = 0; a < alphabet; ++a) {
                Word w2 = w;
                w2.push_back(a);
                next.push_back(w2);
                out.push_back(std::move(w2));
            }
        layer = std::move(next);
    }
    return out;
}

ExplicitNfa<int> randomNfa(std::mt19937& rng, int maxStates, int alphabet) {
    ExplicitNfa<int> a;
    a.stateCount = 1 + rng() % maxStates;
    a.initialStates = {static_cast<uint32_t>(rng() % a.stateCount)};
    for (uint32_t s = 0; s < a.stateCount; ++s)
        if (rng() % 2) a.acceptingStates.push_back(s);
    int nTrans = static_cast<int>(rng() % (3 * a.stateCount + 1));
    for (int i = 0; i < nTrans; ++i)
        a.trans.push_back({rng() % a.stateCount, static_cast<int>(rng() % alphabet),
                           rng() % a.stateCount});
    return a;
}

}  // namespace

TEST_CASE("explicit NFA membership") {
    // a*: one state, loop on a (letter 0)
    ExplicitNfa<int> a;
    a.stateCount = 1;
    a.initialStates = {0};
    a.acceptingStates = {0};
    a.trans = {{0, 0, 0}};
    CHECK(nfaAccepts(a, {}));
    CHECK(nfaAccepts(a, {0, 0, 0}));
    CHECK_FALSE(nfaAccepts(a, {1}));
}

TEST_CASE("NFA product is the intersection") {
    ExplicitNfa<int> all;  // a*
    all.stateCount = 1;
    all.initialStates = {0};
    all.acceptingStates = {0};
    all.trans = {{0, 0, 0}};
    ExplicitNfa<int> even;  // (aa)*
    even.stateCount = 2;
    even.initialStates = {0};
    even.acceptingStates = {0};
    even.trans = {{0, 0, 1}, {1, 0, 0}};

    ProductNfa<int> prod({&all, &even});
    CHECK(nfaAccepts<int>(prod, {0, 0}));
    CHECK_FALSE(nfaAccepts<int>(prod, {0}));

    // intersecting with the universal automaton changes nothing
    ProductNfa<int> same({&even, &all});
    for (const auto& w : allWords(1, 5)) CHECK(nfaAccepts<int>(same, w) == nfaAccepts(even, w));
}

TEST_CASE("random NFA products agree with membership conjunction") {
    std::mt19937 rng(20240817);
    auto words = allWords(2, 5);
    for (int trial = 0; trial < 60; ++trial) {
        ExplicitNfa<int> a = randomNfa(rng, 3, 2);
        ExplicitNfa<int> b = randomNfa(rng, 3, 2);
        ProductNfa<int> prod({&a, &b});
        for (const auto& w : words)
            REQUIRE(nfaAccepts<int>(prod, w) == (nfaAccepts(a, w) && nfaAccepts(b, w)));
    }
}

TEST_CASE("two-way sweep machine accepts everything by falling off the left end") {
    using T = ExplicitTwoNfa<int>;
    using Cell = TwoNfa<int>::Cell;
    T a;
    a.states = 3;
    a.init = 0;
    a.acceptingStates = {2};
    a.trans = {
        {0, Cell::LeftEnd, 0, 0, 1},  {0, Cell::Letter, 0, 0, 1},  {0, Cell::Letter, 1, 0, 1},
        {0, Cell::RightEnd, 0, 1, -1}, {1, Cell::Letter, 0, 1, -1}, {1, Cell::Letter, 1, 1, -1},
        {1, Cell::LeftEnd, 0, 2, -1},
    };
    for (const auto& w : allWords(2, 4)) CHECK(twoNfaAccepts<int>(a, w));
    auto nfa = twoNfaToNfa<int>(std::make_shared<T>(a));
    for (const auto& w : allWords(2, 4)) CHECK(nfaAccepts(*nfa, w));
}

TEST_CASE("one-way two-NFAs convert without blowup and keep the language") {
    using T = ExplicitTwoNfa<int>;
    using Cell = TwoNfa<int>::Cell;
    T a;  // accepts words with at least one letter 1
    a.states = 2;
    a.init = 0;
    a.acceptingStates = {1};
    a.trans = {
        {0, Cell::LeftEnd, 0, 0, 1}, {0, Cell::Letter, 0, 0, 1}, {0, Cell::Letter, 1, 1, 1},
        {1, Cell::Letter, 0, 1, 1},  {1, Cell::Letter, 1, 1, 1}, {1, Cell::RightEnd, 0, 1, 1},
    };
    CHECK(a.oneWay());
    auto nfa = twoNfaToNfa<int>(std::make_shared<T>(a));
    for (const auto& w : allWords(2, 6)) {
        bool hasOne = false;
        for (int x : w) hasOne |= x == 1;
        CHECK(twoNfaAccepts<int>(a, w) == hasOne);
        CHECK(nfaAccepts(*nfa, w) == hasOne);
    }
}

TEST_CASE("random two-NFAs: conversion agrees with direct simulation") {
    using T = ExplicitTwoNfa<int>;
    using Cell = TwoNfa<int>::Cell;
    std::mt19937 rng(917);
    auto words = allWords(2, 6);
    for (int trial = 0; trial < 60; ++trial) {
        T a;
        a.states = 1 + rng() % 3;
        a.init = rng() % a.states;
        for (uint32_t s = 0; s < a.states; ++s)
            if (rng() % 2) a.acceptingStates.push_back(s);
        int nTrans = static_cast<int>(rng() % (4 * a.states));
        for (int i = 0; i < nTrans; ++i) {
            Cell c = std::array{Cell::LeftEnd, Cell::RightEnd, Cell::Letter,
                                Cell::Letter}[rng() % 4];
            int letter = c == Cell::Letter ? static_cast<int>(rng() % 2) : 0;
            int8_t dir = rng() % 2 ? 1 : -1;
            a.trans.push_back({rng() % a.states, c, letter, rng() % a.states, dir});
        }
        auto nfa = twoNfaToNfa<int>(std::make_shared<T>(a));
        for (const auto& w : words)
            REQUIRE(nfaAccepts(*nfa, w) == twoNfaAccepts<int>(a, w));
    }
}

namespace {

// Bounded breadth-first emptiness oracle: explore configurations up to the
// given stack depth and word length, generating letters from the rules.
template <typename G>
std::optional<Word> boundedEmptiness(const Pda<int, G>& p, size_t maxDepth, size_t maxLen) {
    struct Conf {
        uint32_t q;
        std::vector<G> stack;
        Word word;
    };
    std::deque<Conf> queue;
    for (uint32_t q : p.initials()) {
        Conf c{q, {p.bottom()}, {}};
        queue.push_back(c);
    }
    std::optional<Word> best;
    std::set<std::tuple<uint32_t, std::vector<G>, Word>> visited;
    while (!queue.empty()) {
        Conf c = queue.front();
        queue.pop_front();
        if (c.stack.size() == 1 && c.stack[0] == p.bottom() && p.acceptingState(c.q)) return c.word;
        if (c.stack.empty()) continue;
        if (!visited.insert({c.q, c.stack, c.word}).second) continue;
        G top = c.stack.front();
        p.expand(c.q, top, [&](const std::optional<int>& in, uint32_t q1,
                               const std::vector<G>& push) {
            if (in && c.word.size() >= maxLen) return;
            if (c.stack.size() - 1 + push.size() > maxDepth) return;
            Conf n;
            n.q = q1;
            n.stack = push;
            n.stack.insert(n.stack.end(), c.stack.begin() + 1, c.stack.end());
            n.word = c.word;
            if (in) n.word.push_back(*in);
            queue.push_back(std::move(n));
        });
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("balanced-bracket PDA membership and emptiness") {
    // letters: 0 = open, 1 = close; stack: 0 = bottom, 1 = pending open
    ExplicitPda<int, int> p;
    p.states = 1;
    p.init = 0;
    p.bottomSym = 0;
    p.rules = {
        {0, 0, 0, 0, {1, 0}},  // open on bottom
        {0, 0, 1, 0, {1, 1}},  // open on open
        {0, 1, 1, 0, {}},      // close pops
    };
    CHECK(pdaAccepts<int, int>(p, {0, 1, 0, 1}));
    CHECK(pdaAccepts<int, int>(p, {0, 0, 1, 1}));
    CHECK_FALSE(pdaAccepts<int, int>(p, {0}));
    CHECK_FALSE(pdaAccepts<int, int>(p, {1, 0}));

    auto w = pdaEmptiness<int, int>(p);
    REQUIRE(w.has_value());
    CHECK(pdaAccepts<int, int>(p, *w));
}

TEST_CASE("push-only PDA has empty nontrivial language") {
    ExplicitPda<int, int> p;
    p.states = 2;
    p.init = 0;
    p.bottomSym = 0;
    p.acceptingStates = {1};  // never reached with a bare bottom
    p.rules = {
        {0, 0, 0, 1, {1, 0}},
        {1, 0, 1, 1, {1, 1}},
    };
    CHECK_FALSE(pdaEmptiness<int, int>(p).has_value());
}

TEST_CASE("PDA-NFA product restricts the context-free language") {
    ExplicitPda<int, int> p;  // balanced brackets, as above
    p.states = 1;
    p.init = 0;
    p.bottomSym = 0;
    p.rules = {{0, 0, 0, 0, {1, 0}}, {0, 0, 1, 0, {1, 1}}, {0, 1, 1, 0, {}}};

    ExplicitNfa<int> noNesting;  // forbids two consecutive opens
    noNesting.stateCount = 2;
    noNesting.initialStates = {0};
    noNesting.acceptingStates = {0, 1};
    noNesting.trans = {{0, 0, 1}, {1, 1, 0}};

    PdaNfaProduct<int, int> prod(p, noNesting);
    CHECK(pdaAccepts<int, int>(prod, {0, 1, 0, 1}));
    CHECK_FALSE(pdaAccepts<int, int>(prod, {0, 0, 1, 1}));
    auto w = pdaEmptiness<int, int>(prod);
    REQUIRE(w.has_value());
    CHECK(pdaAccepts<int, int>(prod, *w));
    CHECK(pdaAccepts<int, int>(p, *w));
    CHECK(nfaAccepts(noNesting, *w));

    ExplicitNfa<int> empty;
    empty.stateCount = 1;
    empty.initialStates = {0};
    PdaNfaProduct<int, int> dead(p, empty);
    CHECK_FALSE(pdaEmptiness<int, int>(dead).has_value());
}

TEST_CASE("random PDAs: emptiness agrees with the bounded-search oracle") {
    std::mt19937 rng(4242);
    int agreedNonempty = 0;
    for (int trial = 0; trial < 120; ++trial) {
        ExplicitPda<int, int> p;
        p.states = 1 + rng() % 4;
        p.init = rng() % p.states;
        p.bottomSym = 0;
        int nStack = 1 + static_cast<int>(rng() % 3);
        int nRules = static_cast<int>(rng() % (4 * p.states));
        for (int i = 0; i < nRules; ++i) {
            typename ExplicitPda<int, int>::Rule r;
            r.from = rng() % p.states;
            if (rng() % 4) r.input = static_cast<int>(rng() % 2);
            r.top = static_cast<int>(rng() % nStack);
            r.to = rng() % p.states;
            int pushLen = static_cast<int>(rng() % 3);
            for (int j = 0; j < pushLen; ++j) r.push.push_back(static_cast<int>(rng() % nStack));
            p.rules.push_back(std::move(r));
        }
        auto fast = pdaEmptiness<int, int>(p);
        auto slow = boundedEmptiness<int>(p, 8, 8);
        if (slow.has_value()) {
            REQUIRE(fast.has_value());  // bounded witness implies nonempty
            agreedNonempty++;
        }
        if (fast.has_value()) REQUIRE(pdaAccepts<int, int>(p, *fast));
    }
    CHECK(agreedNonempty > 20);  // the sample exercises the nonempty side
}
