/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_WATCHPOINTS_HPP
#define REPSCOPE_WATCHPOINTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "repscope/rng.hpp"
#include "repscope/trace.hpp"

namespace repscope {

struct WatchpointSlot {
    ObjectId target_obj_id = 0;
    uint64_t target_offset = 0;
    uint32_t width = 8;
    uint64_t expected_value = 0;
    ContextId origin_access_ctx_id = 0;
    ContextId origin_alloc_ctx_id = 0;
};

enum class ArmOutcome : uint8_t { ArmedNewSlot, ReplacedSlot, Rejected };

struct ArmDecision {
    ArmOutcome outcome;
    std::optional<WatchpointSlot> evicted;
};

struct Trap {
    WatchpointSlot slot;
    uint64_t observed_value = 0;
    uint32_t access_width = 8;
    AccessOp op = AccessOp::Load;
    ContextId access_ctx_id = 0;
};

// Simulates W debug registers. Arming past capacity runs classical reservoir
// replacement: the k-th request overall is kept with probability W/k,
// evicting a uniformly chosen armed slot, so every request in a stream has
// equal retention probability. A slot traps once and is gone.
class WatchpointUnit {
public:
    // capacity 0 means unlimited (used for exhaustive-replay runs).
    explicit WatchpointUnit(size_t capacity, uint64_t seed)
        : capacity_(capacity), rng_(seed) {}

    ArmDecision request_arm(const WatchpointSlot& candidate);

    // Fires on byte-range overlap with an armed slot of the same object,
    // loads and stores alike; the earliest-armed matching slot wins and is
    // disarmed immediately.
    std::optional<Trap> check_trap(ObjectId obj_id, uint64_t offset, uint32_t width,
                                   AccessOp op, uint64_t value, ContextId access_ctx_id);

    size_t disarm_for_object(ObjectId obj_id);

    size_t armed_count() const { return slots_.size(); }
    uint64_t requests_seen() const { return requests_seen_; }
    size_t capacity() const { return capacity_; }

    // Armed slots in arm order; test introspection.
    std::vector<WatchpointSlot> armed_slots() const;

private:
    struct Armed {
        WatchpointSlot slot;
        uint64_t seq;
    };

    size_t capacity_;
    Rng rng_;
    uint64_t requests_seen_ = 0;
    uint64_t next_seq_ = 0;
    std::vector<Armed> slots_;
};

}  // namespace repscope

#endif
