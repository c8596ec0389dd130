#include "doctest.h"
#include "fixtures.hpp"
#include "spv/enumerate.hpp"
#include "spv/grammar.hpp"

using namespace spv;

TEST_CASE("rule bodies have the expected shapes") {
    Rule t{Rule::Terminal, 0, 2, 0, 0, MarkAnn::Never};
    Graph gt = ruleBody(t);
    CHECK(gt.nodeCount == 2);
    CHECK(gt.edges.size() == 1);
    CHECK_FALSE(gt.edges[0].isVar);

    Rule s{Rule::Series, 0, 0, 1, 2, MarkAnn::Never};
    Graph gs = ruleBody(s);
    CHECK(gs.nodeCount == 3);
    CHECK(gs.edges.size() == 2);

    Rule p{Rule::Parallel, 0, 0, 1, 2, MarkAnn::Never};
    Graph gp = ruleBody(p);
    CHECK(gp.nodeCount == 2);
    CHECK(gp.edges.size() == 2);
}

TEST_CASE("derivations of the example grammar stay series-parallel") {
    Spgg g = exampleGrammar();
    Graph cur = initialGraph(g.start);
    // v0 -> vc . v1 ; v1 -> va || vb ; then expand all to terminals
    cur = applyRule(g, cur, {0, 0});
    cur = applyRule(g, cur, {2, 1});
    CHECK(cur.edges.size() == 3);
    // expand remaining variable edges with their terminal rules
    while (!cur.allTerminal()) {
        for (const auto& e : cur.edges)
            if (e.isVar) {
                for (uint32_t ri = 0; ri < g.rules.size(); ++ri)
                    if (g.rules[ri].head == e.label && g.rules[ri].kind == Rule::Terminal) {
                        cur = applyRule(g, cur, {e.id, ri});
                        break;
                    }
                break;
            }
    }
    CHECK(cur.nodeCount == 3);
    CHECK(cur.edges.size() == 3);
    CHECK(checkSeriesParallel(cur).ok);
}

TEST_CASE("apply rejects a rule whose head does not match the edge") {
    Spgg g = exampleGrammar();
    Graph cur = initialGraph(g.start);
    CHECK_THROWS_AS(applyRule(g, cur, {0, 2}), std::invalid_argument);  // va -> 'a' on a v0 edge
}

TEST_CASE("validation flags unreachable and unproductive variables") {
    Spgg g = exampleGrammar();
    CHECK(validateGrammar(g).empty());

    SUBCASE("unreachable variable") {
        g.variables.push_back("vz");
        g.rules.push_back({Rule::Terminal, 5, 0, 0, 0, MarkAnn::Never});
        auto d = validateGrammar(g);
        REQUIRE(d.messages.size() == 1);
        CHECK(d.messages[0] == "unreachable variable vz");
    }
    SUBCASE("missing rule") {
        g.variables.push_back("vz");
        g.rules.push_back({Rule::Series, 2, 0, 5, 5, MarkAnn::Never});  // va -> vz . vz
        auto d = validateGrammar(g);
        CHECK_FALSE(d.empty());
        CHECK_FALSE(d.languageEmpty);  // va still has its terminal rule
    }
    SUBCASE("empty language") {
        Spgg e;
        e.variables = {"v0"};
        e.rules = {{Rule::Series, 0, 0, 0, 0, MarkAnn::Never}};  // v0 -> v0 . v0 only
        auto d = validateGrammar(e);
        CHECK(d.languageEmpty);
    }
}

TEST_CASE("budget lift splits marks across children") {
    Spgg g = exampleGrammar(MarkAnn::Always, MarkAnn::Never);
    BudgetedSpgg b = liftGrammar(g, 1);
    CHECK(b.minForced[g.start] == 1);  // the top series middle is always marked
    CHECK_FALSE(b.isProductive(g.start, 0));
    CHECK(b.isProductive(g.start, 1));
    // v0 at budget 1 must mark the middle, leaving nothing for the children
    for (const auto& r : b.expansions(g.start, 1)) {
        CHECK(r.markMiddle);
        CHECK(r.budLeft + r.budRight == 0);
    }
    // budget 0 admits no v0 expansion at all
    CHECK(b.expansions(g.start, 0).empty());
}

TEST_CASE("budget lift rejects grammars whose forced marks exceed k") {
    Spgg g = exampleGrammar(MarkAnn::Always, MarkAnn::Never);
    CHECK_THROWS_WITH_AS(liftGrammar(g, 0), "unsatisfiable budget", std::invalid_argument);

    SUBCASE("source and sink flags consume budget too") {
        Spgg h = exampleGrammar(MarkAnn::Never, MarkAnn::Never);
        h.markSource = true;
        h.markSink = true;
        CHECK_THROWS_AS(liftGrammar(h, 1), std::invalid_argument);
        BudgetedSpgg b = liftGrammar(h, 2);
        CHECK(b.startBudgets() == std::vector<uint8_t>{0});
    }
}
