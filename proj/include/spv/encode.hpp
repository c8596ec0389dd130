#pragma once

#include <vector>

#include "spv/enumerate.hpp"
#include "spv/letters.hpp"
#include "spv/semantics.hpp"

namespace spv {

// Word-position layout of the serialization of t row paths in a derived
// graph: shared-node letters at the word boundaries, at series junctions and
// around parallel forks; one letter per edge some row traverses, in
// depth-first derivation order (branch 1 before branch 2).
struct TraceLayout {
    std::vector<TraceLetter> letters;
    std::vector<int32_t> edgeOfLetter;              // graph edge index, -1 = shared letter
    std::vector<int32_t> nodeOfLetter;              // shared-letter node, -1 = edge letter
    // 0 = edge letter, 1 = series junction / word boundary, 2 = parallel fork/join
    std::vector<uint8_t> letterKind;
    std::vector<std::vector<uint32_t>> rowLetters;  // per row, its edge letters in path order
};

// rowEdges: per row, a full source-to-sink path given as graph edge indices
// in order. The graph must carry the derivation tree it was realized from.
TraceLayout buildTraceLayout(const MarkedGraph& g, const Bounds& b,
                             const std::vector<std::vector<uint32_t>>& rowEdges);

struct EncodeResult {
    std::vector<CompositeLetter> word;
    uint32_t blockCount = 0;
    TraceLayout layout;
};

// Canonical serialization of a run: splits each machine's moves into
// direction segments (row h odd = forward, even = backward), numbers the
// context-switch blocks in time order (splitting at reversals), extends each
// segment to a full source-to-sink row path and lays the execution rows over
// the trace skeleton. Throws std::runtime_error when the run needs more
// direction segments than r+1 or more blocks than p.
EncodeResult encodeRun(const MarkedGraph& g, const Machine& mach, const Bounds& b,
                       const Run& run);

}  // namespace spv
