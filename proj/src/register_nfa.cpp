#include "spv/register_nfa.hpp"

#include <algorithm>

namespace spv {

namespace {

// Renumber classes in order of first appearance and drop empty ones.
RegPartition canonical(const RegPartition& p) {
    RegPartition out;
    out.retired = p.retired;
    out.classOf.resize(p.classOf.size());
    std::vector<uint8_t> remap(p.classVal.size(), 0xff);
    for (size_t i = 0; i < p.classOf.size(); ++i) {
        uint8_t c = p.classOf[i];
        if (remap[c] == 0xff) {
            remap[c] = static_cast<uint8_t>(out.classVal.size());
            out.classVal.push_back(p.classVal[c]);
        }
        out.classOf[i] = remap[c];
    }
    return out;
}

uint16_t heldIds(const RegPartition& p) {
    uint16_t h = 0;
    for (size_t c = 0; c < p.classVal.size(); ++c) {
        bool used = std::find(p.classOf.begin(), p.classOf.end(), c) != p.classOf.end();
        if (used && p.classVal[c] != kUnknownReg && p.classVal[c] > 0)
            h |= static_cast<uint16_t>(1u << (p.classVal[c] - 1));
    }
    return h;
}

}  // namespace

std::optional<RegPartition> regPartitionStep(const RegPartition& p, const TraceLetter& a) {
    uint32_t t = static_cast<uint32_t>(p.classOf.size());
    RegPartition q = p;
    if (a.shared) {
        // Merge the rows of each index group into one class; known ids of the
        // merged classes must agree.
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t j = i + 1; j < t; ++j) {
                if (a.indices[i] != a.indices[j]) continue;
                uint8_t ci = q.classOf[i], cj = q.classOf[j];
                if (ci == cj) continue;
                uint8_t vi = q.classVal[ci], vj = q.classVal[cj];
                if (vi != kUnknownReg && vj != kUnknownReg && vi != vj) return std::nullopt;
                uint8_t v = vi != kUnknownReg ? vi : vj;
                q.classVal[ci] = v;
                for (uint32_t r = 0; r < t; ++r)
                    if (q.classOf[r] == cj) q.classOf[r] = ci;
            }
        return canonical(q);
    }
    uint16_t before = heldIds(q);
    // Each group of active rows traverses one edge: same row content, same
    // departure class whose id matches the edge source, then a fresh class
    // holding the target id.
    std::vector<char> done(t, 0);
    for (uint32_t i = 0; i < t; ++i) {
        if (done[i] || !a.rowActive(i)) continue;
        std::vector<uint32_t> group;
        for (uint32_t j = i; j < t; ++j)
            if (a.rowActive(j) && a.rows[j].pathIndex == a.rows[i].pathIndex) {
                if (a.rows[j] != a.rows[i]) return std::nullopt;
                group.push_back(j);
                done[j] = 1;
            }
        uint8_t c = q.classOf[group[0]];
        for (uint32_t r : group)
            if (q.classOf[r] != c) return std::nullopt;
        uint8_t j1 = a.rows[i].srcReg, j2 = a.rows[i].trgReg;
        if (q.classVal[c] == kUnknownReg) {
            if (j1 > 0 && (q.retired & (1u << (j1 - 1)))) return std::nullopt;
            q.classVal[c] = j1;
        } else if (q.classVal[c] != j1) {
            return std::nullopt;
        }
        if (j2 > 0 && (q.retired & (1u << (j2 - 1)))) return std::nullopt;
        uint8_t fresh = static_cast<uint8_t>(q.classVal.size());
        q.classVal.push_back(j2);
        for (uint32_t r : group) q.classOf[r] = fresh;
    }
    uint16_t after = heldIds(q);
    q.retired |= static_cast<uint16_t>(before & ~after);
    return canonical(q);
}

std::vector<uint32_t> RegisterNfa::initials() const {
    RegPartition p;
    p.classOf.assign(b_.t(), 0);
    p.classVal = {kUnknownReg};
    return {intern(std::move(p))};
}

bool RegisterNfa::accepting(uint32_t s) const {
    const RegPartition& p = pool_[s];
    uint8_t v = kUnknownReg;
    for (uint8_t c : p.classOf) {
        uint8_t cv = p.classVal[c];
        if (cv == kUnknownReg) continue;
        if (v != kUnknownReg && v != cv) return false;
        v = cv;
    }
    return true;
}

std::vector<uint32_t> RegisterNfa::step(uint32_t s, const TraceLetter& a) const {
    auto next = regPartitionStep(pool_[s], a);
    if (!next) return {};
    return {intern(std::move(*next))};
}

uint32_t RegisterNfa::intern(RegPartition p) const {
    auto [it, fresh] = index_.emplace(std::move(p), static_cast<uint32_t>(pool_.size()));
    if (fresh) pool_.push_back(it->first);
    return it->second;
}

}  // namespace spv
