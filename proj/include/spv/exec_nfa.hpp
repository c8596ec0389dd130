#pragma once

#include <map>
#include <vector>

#include "spv/letters.hpp"
#include "spv/two_nfa.hpp"

namespace spv {

// Tracking state for one path block of one machine. A block is NotStarted
// until its first and last node have been fixed, Open while the automaton
// follows its row along the word, and Closed afterwards. Forward blocks
// (even 0-based index) carry the machine state reached so far; backward
// blocks appear in the word in reverse time order, so each operation's
// machine step is checked one operation late (`pend*`), and the state the
// block ends in is committed up front (`exp*`).
struct ExecSpan {
    enum class Phase : uint8_t { NotStarted, Open, Closed };
    Phase phase = Phase::NotStarted;
    uint8_t ptr = 0;  // 1-based trace row currently followed

    // forward blocks
    StateId track = 0;    // machine state after the latest operation
    uint8_t curBlock = 0;  // context block of the latest operation, 0 before any

    // backward blocks
    bool hasExpect = false;  // next operation's block/state committed
    uint8_t expBlock = 0;    // 0 = any block
    StateId expState = 0;
    bool hasPending = false;  // latest operation, awaiting its predecessor
    // the deferred check only asks which machine states have a backward
    // transition matching the pending operation, so only that answer is kept:
    // bit q = some transition (q, sym, read/write, succ) matches
    uint64_t pendMask = 0;

    auto operator<=>(const ExecSpan&) const = default;
};

// Checks the execution rows of one machine against the machine's transition
// relation and the row discipline of the word format: every operation sits on
// the trace row its block follows, consecutive operations of a block cover
// consecutive edges of that row, blocks begin and end at shared-node columns
// where the rows involved meet, and padding between operations repeats the
// neighbouring operation's block and state. One-way; reads composite letters
// left to right with lazily interned states.
class ExecTwoNfa : public TwoNfa<CompositeLetter> {
  public:
    using Cell = TwoNfa<CompositeLetter>::Cell;
    static constexpr uint32_t kAccept = UINT32_MAX;

    // machine index is 1-based; the automaton owns rows
    // (machine-1)*(r+1) .. machine*(r+1)-1 of each letter.
    // paddedOpensOnly restricts backward blocks to open only where the word
    // carries the block's padding (rather than guessing the connecting state
    // at a blank column); words padded as encodeRun pads them are unaffected,
    // so the restriction is used to keep the product search small.
    ExecTwoNfa(Machine mach, const Bounds& b, uint32_t machine, bool paddedOpensOnly = false);

    uint32_t stateCount() const override;
    uint32_t initial() const override;
    bool acceptingState(uint32_t q) const override;
    void moves(uint32_t q, Cell cell, const CompositeLetter* letter,
               const std::function<void(uint32_t, int8_t)>& yield) const override;
    bool oneWay() const override { return true; }

    const std::vector<ExecSpan>& spansOf(uint32_t q) const { return pool_[q]; }

  private:
    uint32_t intern(const std::vector<ExecSpan>& s) const;
    void letterMoves(const std::vector<ExecSpan>& st, const CompositeLetter& l,
                     const std::function<void(uint32_t)>& yield) const;

    Machine mach_;
    uint32_t rt_, t_, base_;
    bool paddedOpensOnly_ = false;
    mutable std::vector<std::vector<ExecSpan>> pool_;
    mutable std::map<std::vector<ExecSpan>, uint32_t> index_;
};

// Reads machine `machine`'s operation tokens back out of a word: per path
// block in order, its operations (backward blocks reversed back into time
// order), each as an operation token followed by the state it moves into.
Execution extractExecution(const std::vector<CompositeLetter>& word, uint32_t machine,
                           const Bounds& b, StateId initial);

}  // namespace spv
