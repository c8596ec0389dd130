#pragma once

#include <cstdint>
#include <vector>

#include "spv/graph.hpp"
#include "spv/machine.hpp"

namespace spv {

// Global state of the system of m machines on a fixed symmetric graph:
// per-machine placement (node + control state) and per-node register values.
struct Configuration {
    std::vector<NodeId> pos;      // machine i-1 sits at pos[i-1]
    std::vector<StateId> state;
    std::vector<uint8_t> reg;     // indexed by node; 0 at unmarked nodes

    bool operator==(const Configuration&) const = default;
};

struct Move {
    uint32_t machine = 0;   // 1-based
    uint32_t edgeIdx = 0;   // index into SymGraph::edges
    uint32_t transIdx = 0;  // index into Machine::transitions
};

struct Run {
    std::vector<Configuration> configs;  // length = moves + 1
    std::vector<Move> moves;
};

// Positive boolean combination of atoms "some node holds at least the state
// multiset S". Nodes stored flat; children index into the pool.
struct ConfigProperty {
    struct Node {
        enum Kind : uint8_t { Atom, And, Or } kind = Atom;
        std::vector<StateId> atom;  // sorted multiset, Atom only
        uint32_t left = 0, right = 0;
    };
    std::vector<Node> nodes;
    uint32_t root = 0;

    uint32_t addAtom(std::vector<StateId> s);
    uint32_t addOp(Node::Kind k, uint32_t l, uint32_t r);
    static ConfigProperty atom(std::vector<StateId> s);
};

// All m machines at the source in state q0, registers all 0.
Configuration initialConfiguration(const SymGraph& g, uint32_t m, StateId q0);

struct Successor {
    Configuration config;
    uint32_t edgeIdx = 0;
    uint32_t transIdx = 0;
};
// All moves of machine i (1-based) from γ: at a marked node any transition
// reading the node's register applies; at an unmarked node only read-0 /
// write-0 transitions do. The write lands on the departure node's register.
std::vector<Successor> successors(const SymGraph& g, const Machine& mach, const Configuration& c,
                                  uint32_t i);

bool satisfies(const Configuration& c, const ConfigProperty& f);

// Per-machine count of direction flips along the run's move sequence.
std::vector<uint32_t> reversalCounts(const SymGraph& g, const Machine& mach, const Run& run);

struct RwEntry {
    uint8_t regId = 0;  // 0 = unmarked node, ignored by validity
    uint8_t read = 0;
    uint8_t written = 0;
    bool operator==(const RwEntry&) const = default;
};
using ReadWriteSeq = std::vector<RwEntry>;

ReadWriteSeq extractRwSequence(const SymGraph& g, const Machine& mach, const Run& run);

// True iff every entry with regId > 0 reads the latest prior write to that
// register (beta0[j] if none). beta0 is indexed 1..k.
bool rwValid(const ReadWriteSeq& s, const std::vector<uint8_t>& beta0);

// Move-by-move validation of a run against the semantics; also recomputes the
// configuration sequence. Returns false on any mismatch.
bool replayRun(const SymGraph& g, const Machine& mach, const Run& run);

}  // namespace spv
