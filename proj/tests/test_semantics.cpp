#include "doctest.h"
#include "fixtures.hpp"
#include "spv/oracle.hpp"
#include "spv/semantics.hpp"

using namespace spv;

namespace {
const StateId Q0 = 0, QA = 1, QB = 2;
}

TEST_CASE("initial configuration puts every machine at the source in q0") {
    SymGraph g = symmetricClosure(exampleGraph());
    Configuration c = initialConfiguration(g, 2, Q0);
    CHECK(c.pos == std::vector<NodeId>{g.source, g.source});
    CHECK(c.state == std::vector<StateId>{Q0, Q0});
    for (auto b : c.reg) CHECK(b == 0);
    CHECK(satisfies(c, ConfigProperty::atom({Q0, Q0})));
}

TEST_CASE("successor moves read and write the departure node's register") {
    MarkedGraph mg = exampleGraph();
    SymGraph g = symmetricClosure(mg);
    Machine m = exampleMachine();
    Configuration c = initialConfiguration(g, 1, Q0);

    // source is unmarked: only the read-0/write-0 c-transition fires
    auto succ = successors(g, m, c, 1);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config.pos[0] == 2);  // the fork node
    CHECK(succ[0].config.state[0] == Q0);
    CHECK(succ[0].config.reg[2] == 0);

    // fork node is marked with register value 0: the a-edge claims it
    Configuration atFork = succ[0].config;
    bool claimed = false;
    for (const auto& s : successors(g, m, atFork, 1)) {
        if (g.edges[s.edgeIdx].sym == 0 && g.edges[s.edgeIdx].dir == 1) {
            CHECK(s.config.state[0] == QA);
            CHECK(s.config.reg[2] == 1);
            claimed = true;
        }
    }
    CHECK(claimed);

    // a machine with no matching transition is stuck
    Machine empty;
    empty.states = {"q0"};
    empty.alphabet = m.alphabet;
    CHECK(successors(g, empty, c, 1).empty());
}

TEST_CASE("property satisfaction is per-node multiset containment") {
    Configuration c;
    c.pos = {4, 5};
    c.state = {QA, QB};
    c.reg = {};
    CHECK_FALSE(satisfies(c, ConfigProperty::atom({QA, QA})));
    CHECK_FALSE(satisfies(c, ConfigProperty::atom({QA, QB})));  // different nodes
    ConfigProperty both;
    both.addOp(ConfigProperty::Node::And, both.addAtom({QA}), both.addAtom({QB}));
    CHECK(satisfies(c, both));

    c.pos = {4, 4};
    CHECK(satisfies(c, ConfigProperty::atom({QA, QB})));
    CHECK_FALSE(satisfies(c, ConfigProperty::atom({QA, QA})));
}

TEST_CASE("reversal counting flags every direction flip") {
    MarkedGraph mg;
    mg.graph.nodeCount = 2;
    mg.graph.source = 0;
    mg.graph.sink = 1;
    mg.graph.addEdge(0, 1, false, 0);
    mg.marked = {0, 0};
    mg.regId = {0, 0};
    SymGraph g = symmetricClosure(mg);
    Machine m;
    m.states = {"q0"};
    m.alphabet = {"a"};
    m.transitions = {{0, 0, 1, 0, 0, 0}, {0, 0, -1, 0, 0, 0}};

    uint32_t fwd = 0, bwd = 1;  // edge indices in the closure
    Run run;
    run.configs.resize(4);
    run.moves = {{1, fwd, 0}, {1, bwd, 1}, {1, fwd, 0}};
    for (auto& c : run.configs) {
        c.pos = {0};
        c.state = {0};
        c.reg = {0, 0};
    }
    CHECK(reversalCounts(g, m, run) == std::vector<uint32_t>{2});
    run.moves = {{1, fwd, 0}};
    CHECK(reversalCounts(g, m, run) == std::vector<uint32_t>{0});
}

TEST_CASE("read-write validity chains each read to the latest write") {
    std::vector<uint8_t> beta0 = {0, 0, 0};  // registers 1, 2 start at 0
    CHECK(rwValid({{1, 0, 1}, {1, 1, 0}}, beta0));
    CHECK_FALSE(rwValid({{1, 1, 0}}, beta0));
    CHECK(rwValid({{1, 0, 1}, {2, 0, 0}, {1, 1, 1}}, beta0));
    CHECK(rwValid({{0, 1, 1}, {1, 0, 0}}, beta0));  // id-0 entries ignored
}

TEST_CASE("oracle finds the two-branch meeting and respects the semaphore") {
    MarkedGraph mg = exampleGraph();
    Machine m = exampleMachine();
    Bounds b;
    b.m = 2;
    b.r = 1;
    b.k = 1;
    b.p = 4;

    SUBCASE("one machine in qa and one in qb can meet") {
        auto run = oracleReachOnGraph(m, b, mg, ConfigProperty::atom({QA, QB}), 40);
        REQUIRE(run.has_value());
        SymGraph g = symmetricClosure(mg);
        CHECK(replayRun(g, m, *run));
        CHECK(satisfies(run->configs.back(), ConfigProperty::atom({QA, QB})));
        // shortest witness backtracks to the fork: one reversal per machine
        auto rev = reversalCounts(g, m, *run);
        CHECK(rev[0] <= 1);
        CHECK(rev[1] <= 1);
        CHECK(run->moves.size() == 6);
        // the run's register accesses are consistent from the all-zero start
        CHECK(rwValid(extractRwSequence(g, m, *run), {0, 0}));
    }
    SUBCASE("two machines in qa never coexist: the register is a semaphore") {
        auto run = oracleReachOnGraph(m, b, mg, ConfigProperty::atom({QA, QA}), 40);
        CHECK_FALSE(run.has_value());
    }
    SUBCASE("more reversals do not break the exclusion") {
        b.r = 3;
        auto run = oracleReachOnGraph(m, b, mg, ConfigProperty::atom({QA, QA}), 24);
        CHECK_FALSE(run.has_value());
    }
}

TEST_CASE("oracle over enumerated graphs finds a witness and reports its graph") {
    Spgg gram = exampleGrammar(MarkAnn::Always, MarkAnn::Never);
    Machine m = exampleMachine();
    Bounds b;
    b.m = 2;
    b.r = 1;
    b.k = 1;
    b.p = 4;
    auto res = oracleReach(m, b, liftGrammar(gram, 1), ConfigProperty::atom({QA, QB}), 6, 20);
    REQUIRE(res.has_value());
    CHECK(checkSeriesParallel(res->graph.graph).ok);
    CHECK(replayRun(symmetricClosure(res->graph), m, res->run));

    // the semaphore holds on every graph the grammar derives, not just one
    auto none = oracleReach(m, b, liftGrammar(gram, 1), ConfigProperty::atom({QA, QA}), 5, 16);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("oracle witnesses are monotone in the step bound") {
    MarkedGraph mg = exampleGraph();
    Machine m = exampleMachine();
    Bounds b;
    b.m = 2;
    b.r = 1;
    b.k = 1;
    b.p = 4;
    auto small = oracleReachOnGraph(m, b, mg, ConfigProperty::atom({QA, QB}), 12);
    auto large = oracleReachOnGraph(m, b, mg, ConfigProperty::atom({QA, QB}), 40);
    REQUIRE(small.has_value());
    REQUIRE(large.has_value());
    CHECK(small->moves.size() == large->moves.size());  // BFS returns shortest
}
