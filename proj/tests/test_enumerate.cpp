#include <unordered_set>

#include "doctest.h"
#include "fixtures.hpp"
#include "spv/enumerate.hpp"

using namespace spv;

TEST_CASE("single-rule grammar enumerates exactly one graph") {
    Spgg g;
    g.variables = {"v0"};
    g.alphabet = {"a"};
    g.start = 0;
    g.rules = {{Rule::Terminal, 0, 0, 0, 0, MarkAnn::Never}};
    auto graphs = enumerateGraphs(liftGrammar(g, 0), 2);
    REQUIRE(graphs.size() == 1);
    CHECK(graphs[0].graph.nodeCount == 2);
    CHECK(graphs[0].graph.edges.size() == 1);
    CHECK(graphs[0].markCount() == 0);
    CHECK(graphs[0].derivation != nullptr);
}

TEST_CASE("example grammar counts match brute-force derivation enumeration") {
    // expected values computed by an independent sentential-form search with
    // permutation-based isomorphism, frozen here
    Spgg g = exampleGrammar();
    CHECK(enumerateGraphs(liftGrammar(g, 0), 3).size() == 4);
    CHECK(enumerateGraphs(liftGrammar(g, 1), 3).size() == 8);
    CHECK(enumerateGraphs(liftGrammar(g, 1), 4).size() == 132);
}

TEST_CASE("every enumerated graph is series-parallel with bounded marks") {
    Spgg g = exampleGrammar();
    auto graphs = enumerateGraphs(liftGrammar(g, 2), 5);
    CHECK(graphs.size() > 100);
    for (const auto& mg : graphs) {
        CHECK(checkSeriesParallel(mg.graph).ok);
        CHECK(mg.graph.nodeCount <= 5);
        CHECK(mg.markCount() <= 2);
        // register ids injective and drawn from 1..markCount
        std::unordered_set<int> ids;
        for (NodeId n = 0; n < mg.graph.nodeCount; ++n) {
            if (mg.marked[n]) {
                CHECK(mg.regId[n] >= 1);
                CHECK(ids.insert(mg.regId[n]).second);
            } else {
                CHECK(mg.regId[n] == 0);
            }
        }
    }
}

TEST_CASE("marks do not change the underlying graph language") {
    Spgg opt = exampleGrammar();                              // optional marks
    Spgg none = exampleGrammar(MarkAnn::Never, MarkAnn::Never);
    auto withMarks = enumerateGraphs(liftGrammar(opt, 2), 4);
    auto without = enumerateGraphs(liftGrammar(none, 0), 4);
    std::unordered_set<std::string> a, b;
    for (auto mg : withMarks) {
        mg.marked.assign(mg.graph.nodeCount, 0);  // erase marks, compare shapes
        mg.regId.assign(mg.graph.nodeCount, 0);
        a.insert(canonicalKey(mg));
    }
    for (const auto& mg : without) b.insert(canonicalKey(mg));
    CHECK(a == b);
}

TEST_CASE("canonical key identifies isomorphic graphs and separates others") {
    // two orderings of the same parallel composition
    MarkedGraph g1, g2;
    for (auto* g : {&g1, &g2}) {
        g->graph.nodeCount = 3;
        g->graph.source = 0;
        g->graph.sink = 1;
        g->marked = {0, 0, 0};
        g->regId = {0, 0, 0};
    }
    g1.graph.addEdge(0, 2, false, 0);
    g1.graph.addEdge(2, 1, false, 1);
    g2.graph.addEdge(2, 1, false, 1);
    g2.graph.addEdge(0, 2, false, 0);
    CHECK(canonicalKey(g1) == canonicalKey(g2));

    MarkedGraph g3 = g1;
    g3.marked[2] = 1;
    CHECK(canonicalKey(g1) != canonicalKey(g3));
}
