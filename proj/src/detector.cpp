/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/detector.hpp"

namespace repscope {

RawContextCounters& ReplicaDetector::counters_for(ContextId ctx) {
    auto [it, fresh] = counters_.try_emplace(ctx);
    if (fresh) it->second.alloc_ctx_id = ctx;
    return it->second;
}

void ReplicaDetector::push_bounded(std::deque<SampleTuple>& queue, SampleTuple tuple) {
    if (config_.queue_capacity > 0 && queue.size() >= config_.queue_capacity)
        queue.pop_front();  // FIFO eviction: oldest sample goes first
    queue.push_back(tuple);
}

void ReplicaDetector::on_alloc(ContextId alloc_ctx_id, ObjectId obj_id, uint64_t size,
                               uint32_t generation) {
    (void)obj_id;
    (void)size;
    (void)generation;
    states_.try_emplace(alloc_ctx_id);  // queues rotate lazily, on first sample
    counters_for(alloc_ctx_id).objects++;
}

std::vector<ArmDecision> ReplicaDetector::on_sample(const Sample& sample) {
    ContextState& st = states_[sample.alloc_ctx_id];
    RawContextCounters& counters = counters_for(sample.alloc_ctx_id);
    counters.samples++;

    SampleTuple tuple{sample.access_ctx_id, sample.offset, sample.width, sample.value};

    if (!st.has_curr) {
        st.has_curr = true;
        st.curr_obj = sample.obj_id;
        st.curr_gen = sample.generation;
        st.curr_size = sample.object_size;
        push_bounded(st.curr_queue, tuple);
    } else if (sample.obj_id == st.curr_obj) {
        push_bounded(st.curr_queue, tuple);
    } else if (sample.generation > st.curr_gen) {
        // A newer object at this context: its predecessor's queue becomes Q1.
        st.prev_queue = std::move(st.curr_queue);
        st.prev_size = st.curr_size;
        st.has_prev = true;
        st.curr_queue.clear();
        st.curr_obj = sample.obj_id;
        st.curr_gen = sample.generation;
        st.curr_size = sample.object_size;
        push_bounded(st.curr_queue, tuple);
    } else {
        // Sample from an already-superseded generation; the queues track the
        // newest sampled object only.
        return {};
    }

    // Every sample of the current object consumes one predecessor tuple to
    // arm a watchpoint at the same offset of the current object. Objects of
    // unequal size are never paired.
    if (!st.has_prev || st.prev_queue.empty() || st.prev_size != st.curr_size) return {};

    SampleTuple armed = st.prev_queue.front();
    st.prev_queue.pop_front();

    WatchpointSlot slot;
    slot.target_obj_id = st.curr_obj;
    slot.target_offset = armed.offset;
    slot.width = armed.width;
    slot.expected_value = armed.value;
    slot.origin_access_ctx_id = armed.access_ctx_id;
    slot.origin_alloc_ctx_id = sample.alloc_ctx_id;
    return {unit_.request_arm(slot)};
}

std::optional<ComparisonOutcome> ReplicaDetector::on_trap(const Trap& trap) {
    // The slot is already consumed (single use). An outcome is only valid
    // for a load at the very access context the expected value came from,
    // with matching width; anything else would compare unlike reads.
    if (trap.op != AccessOp::Load) return std::nullopt;
    if (trap.access_ctx_id != trap.slot.origin_access_ctx_id) return std::nullopt;
    if (trap.access_width != trap.slot.width) return std::nullopt;

    ComparisonOutcome outcome;
    outcome.alloc_ctx_id = trap.slot.origin_alloc_ctx_id;
    outcome.access_ctx_id = trap.access_ctx_id;
    outcome.offset = trap.slot.target_offset;
    outcome.old_value = trap.slot.expected_value;
    outcome.new_value = trap.observed_value;
    outcome.equal = trap.observed_value == trap.slot.expected_value;

    RawContextCounters& counters = counters_for(outcome.alloc_ctx_id);
    if (outcome.equal)
        counters.equivalent++;
    else
        counters.different++;
    counters.comparisons_by_access_ctx[outcome.access_ctx_id]++;
    outcomes_.push_back(outcome);
    return outcome;
}

void ReplicaDetector::on_free(ObjectId obj_id) {
    unit_.disarm_for_object(obj_id);
    // Queues are kept: remembered samples stay comparable against the next
    // allocation at the same context.
}

void ReplicaDetector::count_access(ContextId alloc_ctx_id) {
    counters_for(alloc_ctx_id).accesses++;
}

std::vector<RawContextCounters> ReplicaDetector::finalize() const {
    std::vector<RawContextCounters> out;
    out.reserve(counters_.size());
    for (const auto& [ctx, counters] : counters_) out.push_back(counters);
    return out;
}

}  // namespace repscope
