/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/context_tree.hpp"

#include <algorithm>

namespace repscope {

ContextId ContextTree::intern_path(std::span<const FrameId> frames) {
    if (frames.empty()) throw EmptyPath("cannot intern an empty frame path");
    ContextId node = kRoot;
    for (FrameId frame : frames) {
        auto it = nodes_[node].children.find(frame);
        if (it == nodes_[node].children.end()) {
            ContextId fresh = static_cast<ContextId>(nodes_.size());
            nodes_.push_back(Node{frame, node, {}});  // may reallocate nodes_
            nodes_[node].children.emplace(frame, fresh);
            node = fresh;
        } else {
            node = it->second;
        }
    }
    return node;
}

std::vector<FrameId> ContextTree::path_of(ContextId ctx) const {
    check(ctx);
    std::vector<FrameId> path;
    for (ContextId node = ctx; node != kRoot; node = nodes_[node].parent)
        path.push_back(nodes_[node].frame);
    std::reverse(path.begin(), path.end());
    return path;
}

FrameId ContextTree::frame_of(ContextId ctx) const {
    check(ctx);
    return nodes_[ctx].frame;
}

ContextId ContextTree::parent_of(ContextId ctx) const {
    check(ctx);
    return nodes_[ctx].parent;
}

std::vector<ContextId> ContextTree::absorb(const ContextTree& src) {
    if (frame_table_fp_ && src.frame_table_fp_ && frame_table_fp_ != src.frame_table_fp_)
        throw FrameTableMismatch("merging trees built against different frame tables");

    std::vector<ContextId> remap(src.nodes_.size(), kRoot);
    // Source node ids are assigned in creation order, so every parent id is
    // smaller than its children and one forward pass suffices.
    for (ContextId id = 1; id < src.nodes_.size(); ++id) {
        const Node& n = src.nodes_[id];
        const ContextId parent_here = remap[n.parent];
        auto it = nodes_[parent_here].children.find(n.frame);
        if (it == nodes_[parent_here].children.end()) {
            ContextId fresh = static_cast<ContextId>(nodes_.size());
            nodes_.push_back(Node{n.frame, parent_here, {}});  // may reallocate nodes_
            nodes_[parent_here].children.emplace(n.frame, fresh);
            remap[id] = fresh;
        } else {
            remap[id] = it->second;
        }
    }
    return remap;
}

std::vector<ContextId> ContextTree::all_contexts() const {
    std::vector<ContextId> out;
    out.reserve(nodes_.size() - 1);
    for (ContextId id = 1; id < nodes_.size(); ++id) out.push_back(id);
    return out;
}

ContextTree merge(const ContextTree& a, const ContextTree& b) {
    ContextTree out;
    out.set_frame_table_fingerprint(a.frame_table_fingerprint()
                                        ? a.frame_table_fingerprint()
                                        : b.frame_table_fingerprint());
    out.absorb(a);
    out.absorb(b);
    return out;
}

}  // namespace repscope
