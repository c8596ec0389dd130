#pragma once

#include <map>
#include <vector>

#include "spv/letters.hpp"
#include "spv/nfa.hpp"
#include "spv/semantics.hpp"

namespace spv {

// What one row of a letter shows at its pointer: either the shared-node
// index the row's block is grouped under, or the full trace row it rides.
struct RowSigma {
    bool shared = false;
    TraceRow row{};     // edge letters (and the pre-word filler row)
    uint8_t index = 1;  // shared letters

    auto operator<=>(const RowSigma&) const = default;
};

// Per-row (block, state, sigma) snapshot of one letter position.
struct RowView {
    uint8_t p = 0;
    StateId q = 0;
    RowSigma sigma{};

    auto operator<=>(const RowView&) const = default;
};

struct PropertyContext {
    std::vector<RowView> rows;  // one per trace row
    // In a stored (quotiented) context each row's sigma holds, in its index
    // field, a bitmask of the other machines' rows that showed the same
    // thing, instead of the value itself.
    bool quotiented = false;

    auto operator<=>(const PropertyContext&) const = default;
};

// Snapshot of a letter: each row shows its block, the state its operation or
// padding carries, and what its pointer points at.
PropertyContext letterContext(const CompositeLetter& l, const Bounds& b);

// The snapshot preceding the first letter: no blocks, initial state, padding.
PropertyContext initialContext(const Bounds& b, StateId initial);

// True when the machines in M are shown together at one node by the
// consecutive snapshot pair (c1, c2), in the states S (sorted multiset), with
// machine n read from row f[n] of c1 (odd row) or c2 (even row). c2 == null
// stands for the end of the word: only odd rows can be read and only c1 can
// witness the shared node. The machine holding the largest block among M must
// strictly dominate every other moving machine, whose block must change
// between the two snapshots; all selected rows must agree on a shared-node
// index or on an edge path index, in c1 or in c2.
bool nodeProperty(const std::vector<StateId>& S, const PropertyContext& c1,
                  const PropertyContext* c2, const std::vector<uint32_t>& M,
                  const std::vector<uint8_t>& f, const Bounds& b);

// Watches consecutive letters for configurations satisfying the property:
// one detector per atom fires nondeterministically when nodeProperty holds,
// recording the block number each involved machine was at; the word is
// accepted when the property's formula holds over the fired atoms and every
// recorded block is the machine's overall last, anchoring all detections at
// the run's final configuration.
class PropertyNfa : public Nfa<CompositeLetter> {
  public:
    PropertyNfa(ConfigProperty f, const Bounds& b, StateId initial);

    std::vector<uint32_t> initials() const override;
    bool accepting(uint32_t s) const override;
    std::vector<uint32_t> step(uint32_t s, const CompositeLetter& l) const override;
    size_t stateCount() const { return pool_.size(); }

  private:
    struct State {
        PropertyContext prev;
        std::vector<uint8_t> maxBlock;                // per machine
        std::vector<uint8_t> fired;                   // per atom
        std::vector<std::vector<uint8_t>> storedP;    // per atom, per machine; 0xff = n/a

        auto operator<=>(const State&) const = default;
    };

    struct Detection {
        std::vector<uint32_t> machines;
        std::vector<uint8_t> blocks;  // parallel to machines
    };

    std::vector<Detection> detections(const std::vector<StateId>& S,
                                      const PropertyContext& c1,
                                      const PropertyContext* c2) const;
    bool evalFormula(const std::vector<uint8_t>& atomOk) const;
    uint32_t intern(const State& s) const;

    ConfigProperty f_;
    Bounds b_;
    StateId initial_;
    std::vector<uint32_t> atomNodes_;  // indices of atom nodes in f_
    mutable std::vector<State> pool_;
    mutable std::map<State, uint32_t> index_;
};

}  // namespace spv
