/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_CONTEXT_TREE_HPP
#define REPSCOPE_CONTEXT_TREE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "repscope/errors.hpp"
#include "repscope/trace.hpp"

namespace repscope {

// Prefix-compressed calling context tree. Paths are stored root-first with
// the leaf (innermost frame) last; a context id names the leaf node.
// Node 0 is the synthetic root and never a valid context id.
class ContextTree {
public:
    static constexpr ContextId kRoot = 0;

    ContextTree() { nodes_.push_back(Node{0, kRoot, {}}); }

    // Idempotent: the same frame sequence always yields the same id, and
    // shared prefixes share nodes.
    ContextId intern_path(std::span<const FrameId> frames);
    ContextId intern_path(const std::vector<FrameId>& frames) {
        return intern_path(std::span<const FrameId>(frames));
    }

    std::vector<FrameId> path_of(ContextId ctx) const;

    bool contains(ContextId ctx) const { return ctx > 0 && ctx < nodes_.size(); }
    size_t node_count() const { return nodes_.size(); }  // root included

    FrameId frame_of(ContextId ctx) const;
    ContextId parent_of(ContextId ctx) const;

    // Trees built against different frame tables must not be merged; the
    // owner stamps a fingerprint of its table here. 0 means unset.
    void set_frame_table_fingerprint(uint64_t fp) { frame_table_fp_ = fp; }
    uint64_t frame_table_fingerprint() const { return frame_table_fp_; }

    // Copies every path of src into this tree (top-down, prefixes coalesce).
    // Returns the id remap, indexed by src node id. Throws FrameTableMismatch
    // when both fingerprints are set and differ.
    std::vector<ContextId> absorb(const ContextTree& src);

    // Every non-root node id in ascending order. Interior nodes count: a
    // prefix of an interned path is itself a valid context.
    std::vector<ContextId> all_contexts() const;

private:
    struct Node {
        FrameId frame;
        ContextId parent;
        std::map<FrameId, ContextId> children;
    };
    std::vector<Node> nodes_;
    uint64_t frame_table_fp_ = 0;

    void check(ContextId ctx) const {
        if (!contains(ctx)) throw UnknownContext("unknown context id " + std::to_string(ctx));
    }
};

// Structural merge: the union of both path sets in a fresh tree.
ContextTree merge(const ContextTree& a, const ContextTree& b);

// Merge with per-context metric accumulators; metrics attached to coalescing
// paths are summed. M needs operator+=.
template <typename M>
std::pair<ContextTree, std::map<ContextId, M>> merge_with_metrics(
    const ContextTree& a, const std::map<ContextId, M>& metrics_a,
    const ContextTree& b, const std::map<ContextId, M>& metrics_b) {
    ContextTree out;
    out.set_frame_table_fingerprint(a.frame_table_fingerprint()
                                        ? a.frame_table_fingerprint()
                                        : b.frame_table_fingerprint());
    std::vector<ContextId> remap_a = out.absorb(a);
    std::vector<ContextId> remap_b = out.absorb(b);
    std::map<ContextId, M> merged;
    for (const auto& [ctx, m] : metrics_a) merged[remap_a.at(ctx)] += m;
    for (const auto& [ctx, m] : metrics_b) merged[remap_b.at(ctx)] += m;
    return {std::move(out), std::move(merged)};
}

}  // namespace repscope

#endif
