#include <doctest.h>

#include "fixtures.hpp"
#include "spv/decide.hpp"
#include "spv/encode.hpp"
#include "spv/oracle.hpp"

using namespace spv;

namespace {

const StateId QA = 1, QB = 2;

Spgg oneEdgeGrammar() {
    Spgg g;
    g.variables = {"v0"};
    g.alphabet = {"a"};
    g.rules = {{Rule::Terminal, 0, 0, 0, 0, MarkAnn::Never}};
    g.start = 0;
    return g;
}

Machine forwardMachine() {
    Machine m;
    m.states = {"s0", "s1"};
    m.alphabet = {"a"};
    m.transitions = {{0, 0, 1, 0, 1, 0}};
    return m;
}

}  // namespace

TEST_CASE("a zero-move run satisfies an all-initial property") {
    Bounds b{1, 0, 0, 1};
    Verdict v = decide(oneEdgeGrammar(), forwardMachine(), b, ConfigProperty::atom({0}));
    REQUIRE(v.reachable);
    CHECK(v.run->moves.empty());
    CHECK(v.graph->graph.edges.size() == 1);
}

TEST_CASE("a single forward move is found and decoded") {
    Bounds b{1, 0, 0, 1};
    Verdict v = decide(oneEdgeGrammar(), forwardMachine(), b, ConfigProperty::atom({1}));
    REQUIRE(v.reachable);
    REQUIRE(v.run->moves.size() == 1);
    CHECK(v.run->configs.back().state[0] == 1);
    CHECK(v.run->configs.back().pos[0] == v.graph->graph.sink);
}

TEST_CASE("an unproducible state is unreachable") {
    Bounds b{1, 0, 0, 2};
    Machine m = forwardMachine();
    m.states.push_back("s2");  // no transition reaches it
    Verdict v = decide(oneEdgeGrammar(), m, b, ConfigProperty::atom({2}));
    CHECK(!v.reachable);
    CHECK(v.blockBound == 2);
}

TEST_CASE("a reversal is found, decoded and bounded") {
    // forward over the edge into s1, then backward over it into s2
    Machine m;
    m.states = {"s0", "s1", "s2"};
    m.alphabet = {"a"};
    m.transitions = {{0, 0, 1, 0, 1, 0}, {1, 0, -1, 0, 2, 0}};
    Bounds b{1, 1, 0, 2};
    Verdict v = decide(oneEdgeGrammar(), m, b, ConfigProperty::atom({2}));
    REQUIRE(v.reachable);
    REQUIRE(v.run->moves.size() == 2);
    CHECK(v.run->configs.back().state[0] == 2);
    CHECK(v.run->configs.back().pos[0] == v.graph->graph.source);

    SUBCASE("but not with the reversal bound at zero") {
        Bounds b0{1, 0, 0, 2};
        CHECK(!decide(oneEdgeGrammar(), m, b0, ConfigProperty::atom({2})).reachable);
    }
}

TEST_CASE("canonical encodings decode back to a replaying run") {
    Spgg g = exampleGrammar(MarkAnn::Always, MarkAnn::Never);
    Machine mach = exampleMachine();
    Bounds b{2, 1, 1, 8};
    BudgetedSpgg lifted = liftGrammar(g, 1);
    auto res = oracleReach(mach, b, lifted, ConfigProperty::atom({QA, QB}), 6, 20);
    REQUIRE(res.has_value());
    EncodeResult enc = encodeRun(res->graph, mach, b, res->run);

    auto [mg, run] = decodeWitness(enc.word, g, mach, b);
    SymGraph sg = symmetricClosure(mg);
    CHECK(replayRun(sg, mach, run));
    CHECK(run.moves.size() == res->run.moves.size());
    CHECK(satisfies(run.configs.back(), ConfigProperty::atom({QA, QB})));
}
