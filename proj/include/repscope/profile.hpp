/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_PROFILE_HPP
#define REPSCOPE_PROFILE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "repscope/context_tree.hpp"
#include "repscope/detector.hpp"
#include "repscope/trace.hpp"

namespace repscope {

struct RunMeta {
    uint64_t period = 101;
    double jitter = 0.25;
    uint64_t watchpoints = 4;      // 0 = unlimited
    uint64_t queue_capacity = 64;  // 0 = unbounded
    uint64_t seed = 0;

    bool operator==(const RunMeta&) const = default;
};

struct ContextCounters {
    uint64_t equivalent = 0;
    uint64_t different = 0;
    uint64_t objects = 0;
    uint64_t samples = 0;
    uint64_t accesses = 0;
    std::map<ContextId, uint64_t> comparisons_by_access;
};

// A detection run's raw result: counters hanging off a context tree. The
// serialized form (schema "v1") stores explicit frame-id paths, so files are
// self-contained and independent of interning order.
struct Profile {
    std::map<FrameId, FrameDef> frames;
    ContextTree tree;
    std::map<ContextId, ContextCounters> contexts;  // keyed by alloc context
    RunMeta meta;

    std::string to_json() const;
    static Profile from_json(const std::string& text);

    static uint64_t frame_fingerprint(const std::map<FrameId, FrameDef>& frames);
};

// Offline cross-thread merge: trees coalesce top-down, counters with the
// same allocation path sum. Profiles must agree on frame definitions
// (FrameTableMismatch) and run settings (ConfigConflict).
Profile merge_profiles(const Profile& a, const Profile& b);
Profile merge_profiles(std::span<const Profile> profiles);

}  // namespace repscope

#endif
