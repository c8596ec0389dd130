#pragma once

#include "spv/grammar.hpp"
#include "spv/machine.hpp"

// Running example grammar used throughout the tests:
//   v0 -> vc . v1         va -> 'a'   va -> va . va
//   v1 -> va || vb        vb -> 'b'   vb -> vb . vb   vb -> vb || vb
// topMark governs the middle of the v0 rule (the node joining the c-edge to
// the branches); innerMark governs all other series middles.
inline spv::Spgg exampleGrammar(spv::MarkAnn topMark = spv::MarkAnn::Optional,
                                spv::MarkAnn innerMark = spv::MarkAnn::Optional) {
    spv::Spgg g;
    g.variables = {"v0", "v1", "va", "vb", "vc"};
    g.alphabet = {"a", "b", "c"};
    const spv::VarId V0 = 0, V1 = 1, VA = 2, VB = 3, VC = 4;
    const spv::SymId A = 0, B = 1, C = 2;
    g.start = V0;
    g.rules = {
        {spv::Rule::Series, V0, 0, VC, V1, topMark},
        {spv::Rule::Parallel, V1, 0, VA, VB, spv::MarkAnn::Never},
        {spv::Rule::Terminal, VA, A, 0, 0, spv::MarkAnn::Never},
        {spv::Rule::Terminal, VB, B, 0, 0, spv::MarkAnn::Never},
        {spv::Rule::Terminal, VC, C, 0, 0, spv::MarkAnn::Never},
        {spv::Rule::Series, VA, 0, VA, VA, innerMark},
        {spv::Rule::Series, VB, 0, VB, VB, innerMark},
        {spv::Rule::Parallel, VB, 0, VB, VB, spv::MarkAnn::Never},
    };
    return g;
}

// The example graph derived from exampleGrammar(): c-edge into a marked fork
// node, an a-path of length 4, and a b-branch of length 3 whose middle is a
// parallel pair (single edge alongside a 3-edge path). 10 nodes, 11 edges.
// Node ids: 0 = source, 1 = sink, 2 = fork (marked, register 1), 3.. = rest.
inline spv::MarkedGraph exampleGraph() {
    spv::MarkedGraph mg;
    auto& g = mg.graph;
    g.nodeCount = 10;
    g.source = 0;
    g.sink = 1;
    const spv::SymId A = 0, B = 1, C = 2;
    const spv::NodeId NB = 0, NE = 1, N1 = 2, S1 = 3, S2 = 4, S3 = 5, S4 = 6, S5 = 7, S6 = 8,
                      S7 = 9;
    g.addEdge(NB, N1, false, C);
    g.addEdge(N1, S1, false, A);
    g.addEdge(S1, S3, false, A);
    g.addEdge(S3, S4, false, A);
    g.addEdge(S4, NE, false, A);
    g.addEdge(N1, S2, false, B);
    g.addEdge(S2, S5, false, B);
    g.addEdge(S5, S6, false, B);
    g.addEdge(S6, S7, false, B);
    g.addEdge(S2, S7, false, B);
    g.addEdge(S7, NE, false, B);
    mg.marked.assign(10, 0);
    mg.regId.assign(10, 0);
    mg.marked[N1] = 1;
    mg.regId[N1] = 1;
    return mg;
}

// The example machine over {a,b,c}: taking an a-edge from a fresh register
// claims it (write 1); b-edges pass through regardless; leaving via a c-edge
// in q_a releases the register. State ids: q0 = 0, qa = 1, qb = 2.
// Every rule applies in both traversal directions.
inline spv::Machine exampleMachine() {
    spv::Machine m;
    m.states = {"q0", "qa", "qb"};
    m.alphabet = {"a", "b", "c"};
    m.initial = 0;
    const spv::StateId Q0 = 0, QA = 1, QB = 2;
    const spv::SymId A = 0, B = 1, C = 2;
    auto add = [&](spv::StateId q, spv::SymId s, uint8_t rd, spv::StateId q2, uint8_t wr) {
        for (int8_t d : {int8_t(1), int8_t(-1)})
            m.transitions.push_back(spv::Transition{q, s, d, rd, q2, wr});
    };
    add(Q0, A, 0, QA, 1);
    add(Q0, B, 0, QB, 0);
    add(Q0, B, 1, QB, 1);
    add(QA, C, 1, Q0, 0);
    add(QB, C, 0, Q0, 0);
    add(QB, C, 1, Q0, 1);
    add(Q0, C, 0, Q0, 0);
    add(Q0, C, 1, Q0, 1);
    add(QA, A, 0, QA, 0);
    add(QA, A, 1, QA, 1);
    add(QB, B, 0, QB, 0);
    add(QB, B, 1, QB, 1);
    return m;
}
