#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spv/exec_nfa.hpp"
#include "spv/grammar.hpp"
#include "spv/letters.hpp"
#include "spv/pda.hpp"
#include "spv/property_nfa.hpp"
#include "spv/register_nfa.hpp"
#include "spv/rw_nfa.hpp"
#include "spv/semantics.hpp"
#include "spv/trace_pda.hpp"

namespace spv {

// Product of the trace PDA with every word checker, over full composite
// letters. Stack behavior and trace letters come from the trace PDA; at each
// letter-emitting rule the execution rows are filled in from a candidate set
// derived from the checkers' current states, and a candidate letter survives
// only if every checker can step on it. The accepted language is the set of
// words encoding a run of the machine system, within the reversal and block
// bounds, that reaches a configuration satisfying the property.
// The grammar must outlive the product.
class ReachabilityProduct : public Pda<CompositeLetter, StackSym> {
  public:
    ReachabilityProduct(const BudgetedSpgg& g, const Machine& mach, const Bounds& b,
                        const ConfigProperty& f);

    std::vector<uint32_t> initials() const override;
    bool acceptingState(uint32_t q) const override;
    StackSym bottom() const override { return StackSym::bottom(); }
    void expand(uint32_t q, const StackSym& top,
                const std::function<void(const std::optional<CompositeLetter>&, uint32_t,
                                         const std::vector<StackSym>&)>& yield) const override;

    size_t stateCount() const { return pool_.size(); }
    size_t regStates() const { return reg_.stateCount(); }
    size_t rwStates() const { return rw_.stateCount(); }
    size_t propStates() const { return prop_.stateCount(); }
    size_t execStates(uint32_t n) const { return exec_[n]->stateCount(); }
    // component ids of an interned control state: trace, reg, rw, prop, exec...
    std::vector<uint32_t> stateParts(uint32_t q) const {
        const State& s = pool_[q];
        std::vector<uint32_t> out{s.trace, s.reg, s.rw, s.prop};
        out.insert(out.end(), s.exec.begin(), s.exec.end());
        return out;
    }

  private:
    struct State {
        uint32_t trace = 0;
        uint32_t reg = 0;
        uint32_t rw = 0;
        uint32_t prop = 0;
        std::vector<uint32_t> exec;  // one execution checker per machine

        auto operator<=>(const State&) const = default;
    };

    uint32_t intern(const State& s) const;
    // Candidate execution-row vectors for one machine's rows at a letter with
    // the given trace component: everything the canonical serialization of a
    // run could put there given the checkers' current states.
    std::vector<std::vector<ExecRow>> rowOptions(uint32_t machine, const State& s,
                                                 const TraceLetter& tl) const;
    // The letters readable from a state at a given trace letter, with the
    // checker components they lead to. Independent of the trace component and
    // the applied rule, so computed once per (checker components, letter) and
    // shared across stack symbols.
    const std::vector<std::pair<uint32_t, uint32_t>>& letterSuccessors(
        const State& s, const TraceLetter& tl) const;

    const Machine& mach_;
    Bounds b_;
    TracePda trace_;
    RegisterNfa reg_;
    RwNfa rw_;
    PropertyNfa prop_;
    std::vector<std::unique_ptr<ExecTwoNfa>> exec_;
    mutable std::vector<State> pool_;
    mutable std::map<State, uint32_t> index_;
    mutable std::vector<CompositeLetter> letterPool_;
    mutable std::map<CompositeLetter, uint32_t> letterPoolIndex_;
    mutable std::map<TraceLetter, uint32_t> tlIndex_;
    mutable std::vector<std::vector<uint32_t>> rests_;  // (reg, rw, prop, exec...)
    mutable std::map<std::vector<uint32_t>, uint32_t> restIndex_;
    // (rest id, trace letter id) -> (letter pool id, successor rest id) list
    mutable std::unordered_map<uint64_t, std::vector<std::pair<uint32_t, uint32_t>>> memo_;
};

struct Verdict {
    bool reachable = false;
    uint32_t blockBound = 0;  // block bound the verdict was established at
    std::optional<MarkedGraph> graph;
    std::optional<Run> run;
    std::vector<CompositeLetter> word;  // accepted witness word (reachable only)
};

// Reachability under the given bounds, by emptiness of the product. A
// nonempty product yields a witness word that is decoded into a marked graph
// and a run, replayed and re-verified before Reachable is returned.
// Throws std::invalid_argument when no derivation fits the register budget.
Verdict decide(const Spgg& g, const Machine& mach, const Bounds& b, const ConfigProperty& f);

// Retries decide with block bounds b.p, b.p+1, ..., maxP; the first
// Reachable answer wins, otherwise Unreachable at blockBound = maxP.
Verdict decideWithRetry(const Spgg& g, const Machine& mach, Bounds b, const ConfigProperty& f,
                        uint32_t maxP);

// Rebuilds the marked graph and run a product witness encodes: re-parses the
// trace component against the grammar, reads each machine's operations off
// its rows, orders them by block number and replays them through the
// semantics. Throws std::runtime_error when the word does not decode — on a
// word accepted by the product that indicates a bug in the word checkers.
std::pair<MarkedGraph, Run> decodeWitness(const std::vector<CompositeLetter>& word, const Spgg& g,
                                          const Machine& mach, const Bounds& b);

}  // namespace spv
