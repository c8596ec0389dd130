#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spv/graph.hpp"

namespace spv {

using StateId = uint32_t;

// One entry of δ ⊆ Q × (Σ×{1,-1}) × B × Q × B: in state q, traversing an
// edge labeled (sym, dir), reading `read` from the register at the departure
// node, move to q2 and write `write` there.
struct Transition {
    StateId q = 0;
    SymId sym = 0;
    int8_t dir = 1;
    uint8_t read = 0;
    StateId q2 = 0;
    uint8_t write = 0;
};

struct Machine {
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<std::string> alphabet;
    std::vector<Transition> transitions;

    std::optional<StateId> stateIndex(const std::string& name) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<StateId>(i);
        return std::nullopt;
    }
};

// Verification bounds: m machines, r reversals per machine, k registers,
// p blocks. t = m*(r+1) is the number of machine paths overall.
struct Bounds {
    uint32_t m = 1;
    uint32_t r = 0;
    uint32_t k = 0;
    uint32_t p = 1;

    uint32_t rt() const { return r + 1; }
    uint32_t t() const { return m * (r + 1); }
};

}  // namespace spv
