#pragma once

#include <map>
#include <optional>
#include <vector>

#include "spv/letters.hpp"
#include "spv/nfa.hpp"

namespace spv {

constexpr uint8_t kUnknownReg = 0xff;

// Location partition of the rows: rows known to sit at the same graph node
// share a class; each class carries the node's register id once observed
// (kUnknownReg until then) plus the set of ids permanently released.
struct RegPartition {
    std::vector<uint8_t> classOf;   // size t, class index per row
    std::vector<uint8_t> classVal;  // per class: 0 = unmarked, else register id
    uint16_t retired = 0;           // bit j-1: id j released, may not reappear

    auto operator<=>(const RegPartition&) const = default;
};

// Deterministic automaton checking that register ids thread consistently
// through the trace: rows traversing an edge together agree with their
// class's id, depart into a class holding the target id, shared-node letters
// merge co-located rows, and a released id never reappears. Ids live at
// distinct nodes except for transient duplicates between rows that are never
// co-grouped, which the structural language of the trace component rules out.
class RegisterNfa : public Nfa<TraceLetter> {
  public:
    explicit RegisterNfa(const Bounds& b) : b_(b) {}

    std::vector<uint32_t> initials() const override;
    bool accepting(uint32_t s) const override;
    std::vector<uint32_t> step(uint32_t s, const TraceLetter& a) const override;

    const RegPartition& partition(uint32_t s) const { return pool_[s]; }
    size_t stateCount() const { return pool_.size(); }

  private:
    uint32_t intern(RegPartition p) const;

    Bounds b_;
    mutable std::vector<RegPartition> pool_;
    mutable std::map<RegPartition, uint32_t> index_;
};

// One-letter successor of a partition; std::nullopt when the letter is
// inconsistent with it.
std::optional<RegPartition> regPartitionStep(const RegPartition& p, const TraceLetter& a);

}  // namespace spv
