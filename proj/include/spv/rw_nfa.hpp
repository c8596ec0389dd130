#pragma once

#include <map>
#include <vector>

#include "spv/letters.hpp"
#include "spv/nfa.hpp"

namespace spv {

// Per-row tracking of the block currently simulated on that row: the block
// number and the register valuation (bit j-1 = register j) at the current
// point of the simulation. Forward rows replay their block's operations in
// time order; backward rows replay them in reverse, starting from a guessed
// end-of-block valuation.
struct RwRow {
    uint8_t openBlock = 0;  // 0 = none
    uint8_t beta = 0;
    uint8_t usedMin = 0;  // smallest / largest block seen on this row, 0 = none
    uint8_t usedMax = 0;

    auto operator<=>(const RwRow&) const = default;
};

struct RwConfig {
    std::vector<RwRow> rows;
    // start-of-block / end-of-block register valuations not yet matched with
    // the neighbouring block; sorted by block number
    std::vector<std::pair<uint8_t, uint8_t>> startVal, endVal;
    uint64_t owned = 0;  // bit b-1 = block b has been claimed by some row
    uint8_t maxBlock = 0;

    auto operator<=>(const RwConfig&) const = default;
};

// Global register-consistency check across all rows of a word. Every
// operation must read the latest value written to its register: each block
// gets a guessed start (forward) or end (backward) valuation, operations
// update it, and the valuations of consecutive blocks are matched against
// each other as soon as both sides are known (block 1 starts all-zero).
// Block numbers are also policed: at most p, claimed by one row only, rising
// along forward rows, falling along backward rows, and ordered by row within
// each machine.
class RwNfa : public Nfa<CompositeLetter> {
  public:
    explicit RwNfa(const Bounds& b);

    std::vector<uint32_t> initials() const override;
    bool accepting(uint32_t s) const override;
    std::vector<uint32_t> step(uint32_t s, const CompositeLetter& l) const override;

    const RwConfig& configOf(uint32_t s) const { return pool_[s]; }
    size_t stateCount() const { return pool_.size(); }

  private:
    uint32_t intern(const RwConfig& c) const;

    uint32_t m_, rt_, t_, k_, p_;
    mutable std::vector<RwConfig> pool_;
    mutable std::map<RwConfig, uint32_t> index_;
};

}  // namespace spv
