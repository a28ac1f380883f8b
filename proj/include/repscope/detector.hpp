/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_DETECTOR_HPP
#define REPSCOPE_DETECTOR_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "repscope/sampler.hpp"
#include "repscope/trace.hpp"
#include "repscope/watchpoints.hpp"

namespace repscope {

// What a sample leaves behind: where the object was read and what was there.
struct SampleTuple {
    ContextId access_ctx_id = 0;
    uint64_t offset = 0;
    uint32_t width = 8;
    uint64_t value = 0;
};

struct ComparisonOutcome {
    ContextId alloc_ctx_id = 0;
    ContextId access_ctx_id = 0;
    uint64_t offset = 0;
    bool equal = false;
    uint64_t old_value = 0;
    uint64_t new_value = 0;
};

struct RawContextCounters {
    ContextId alloc_ctx_id = 0;
    uint64_t equivalent = 0;
    uint64_t different = 0;
    uint64_t objects = 0;   // X: allocations observed at this context
    uint64_t samples = 0;
    uint64_t accesses = 0;
    std::map<ContextId, uint64_t> comparisons_by_access_ctx;
};

struct DetectorConfig {
    size_t queue_capacity = 64;  // tuples per queue; 0 = unbounded
};

// Per-context pairing of consecutively sampled objects. Samples from the
// newest object queue up; each sample also pops one tuple of its
// predecessor's queue and arms a watchpoint at that offset on the newer
// object. Traps at the matching access context become equal/different
// counts per the predecessor's remembered value.
class ReplicaDetector {
public:
    ReplicaDetector(const DetectorConfig& config, WatchpointUnit& unit)
        : config_(config), unit_(unit) {}

    void on_alloc(ContextId alloc_ctx_id, ObjectId obj_id, uint64_t size, uint32_t generation);

    std::vector<ArmDecision> on_sample(const Sample& sample);

    std::optional<ComparisonOutcome> on_trap(const Trap& trap);

    void on_free(ObjectId obj_id);

    void count_access(ContextId alloc_ctx_id);

    std::vector<RawContextCounters> finalize() const;

    const std::vector<ComparisonOutcome>& outcomes() const { return outcomes_; }

private:
    struct ContextState {
        bool has_curr = false;
        bool has_prev = false;
        ObjectId curr_obj = 0;
        uint32_t curr_gen = 0;
        uint64_t curr_size = 0;
        uint64_t prev_size = 0;
        std::deque<SampleTuple> prev_queue;  // Q1: predecessor's samples
        std::deque<SampleTuple> curr_queue;  // Q2: newest object's samples
    };

    DetectorConfig config_;
    WatchpointUnit& unit_;
    std::map<ContextId, ContextState> states_;
    std::map<ContextId, RawContextCounters> counters_;
    std::vector<ComparisonOutcome> outcomes_;

    RawContextCounters& counters_for(ContextId ctx);
    void push_bounded(std::deque<SampleTuple>& queue, SampleTuple tuple);
};

}  // namespace repscope

#endif
