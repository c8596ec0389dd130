#pragma once

#include <cstdint>
#include <vector>

#include "spv/machine.hpp"

namespace spv {

// One row of an edge-kind trace letter: an edge label (kNoSym renders the
// padding symbol for rows whose path is inactive at this position), the
// register ids at the edge's source and target nodes (0 = unmarked), and the
// path index shared by all rows traversing the same edge here.
struct TraceRow {
    SymId label = kNoSym;
    uint8_t srcReg = 0;
    uint8_t trgReg = 0;
    uint8_t pathIndex = 1;  // 1..t

    auto operator<=>(const TraceRow&) const = default;
};

// A letter of the trace alphabet: either one TraceRow per path (edge kind) or
// a tuple of path indices (shared-node kind), where equal indices mark the
// rows whose paths meet at a common node. The two kinds are never mixed.
struct TraceLetter {
    bool shared = false;
    std::vector<TraceRow> rows;     // size t, edge kind only
    std::vector<uint8_t> indices;   // size t, shared kind only (1-based)

    auto operator<=>(const TraceLetter&) const = default;

    bool rowActive(uint32_t i) const { return !shared && rows[i].label != kNoSym; }
};

// One execution row, per (machine, path block): the context-switch block
// number (0 = inactive), register values read and written, a machine state,
// and a 1-based pointer to the trace row the block currently follows.
struct ExecRow {
    uint8_t block = 0;
    uint8_t read = 0;
    uint8_t write = 0;
    StateId succ = 0;
    uint8_t traceRow = 1;

    auto operator<=>(const ExecRow&) const = default;
};

// A letter of the full word alphabet: the trace letter plus m * (r+1)
// execution rows, indexed (machine-1) * (r+1) + (block-parity row - 1).
struct CompositeLetter {
    TraceLetter trace;
    std::vector<ExecRow> exec;

    auto operator<=>(const CompositeLetter&) const = default;
};

// Token stream of an execution: an alternating state / operation sequence
// starting at the machine's initial state.
struct ExecToken {
    bool isState = true;
    StateId q = 0;      // isState
    SymId sym = 0;      // operation
    uint8_t read = 0;
    uint8_t write = 0;

    auto operator<=>(const ExecToken&) const = default;
};
using Execution = std::vector<ExecToken>;

inline ExecToken stateToken(StateId q) { return ExecToken{true, q, 0, 0, 0}; }
inline ExecToken opToken(SymId s, uint8_t b, uint8_t b2) { return ExecToken{false, 0, s, b, b2}; }

// 0-based exec-row index for machine n (1-based) and path block h (1-based).
inline uint32_t execRowIndex(const Bounds& b, uint32_t n, uint32_t h) {
    return (n - 1) * b.rt() + (h - 1);
}

// Canonical padding row: inactive, initial state, pointing at its own row.
inline ExecRow inactiveExecRow(StateId initial, uint32_t ownRow0) {
    return ExecRow{0, 0, 0, initial, static_cast<uint8_t>(ownRow0 + 1)};
}

// Path index shared by a row group: the smallest 1-based member index.
inline uint8_t groupPathIndex(uint16_t rowMask) {
    for (uint8_t i = 0; i < 16; ++i)
        if (rowMask & (1u << i)) return static_cast<uint8_t>(i + 1);
    return 1;
}

// Shared-node letter for the rows in rowMask; other rows keep their own index.
inline TraceLetter makeNodeLetter(uint32_t t, uint16_t rowMask) {
    TraceLetter l;
    l.shared = true;
    l.indices.resize(t);
    uint8_t g = groupPathIndex(rowMask);
    for (uint32_t i = 0; i < t; ++i)
        l.indices[i] = (rowMask & (1u << i)) ? g : static_cast<uint8_t>(i + 1);
    return l;
}

// Edge letter: the rows in rowMask traverse one (label, srcReg, trgReg) edge
// and share a path index; the remaining rows are padded.
inline TraceLetter makeEdgeLetter(uint32_t t, uint16_t rowMask, SymId label, uint8_t srcReg,
                                  uint8_t trgReg) {
    TraceLetter l;
    l.rows.resize(t);
    uint8_t g = groupPathIndex(rowMask);
    for (uint32_t i = 0; i < t; ++i) {
        if (rowMask & (1u << i))
            l.rows[i] = TraceRow{label, srcReg, trgReg, g};
        else
            l.rows[i] = TraceRow{kNoSym, 0, 0, static_cast<uint8_t>(i + 1)};
    }
    return l;
}

}  // namespace spv
