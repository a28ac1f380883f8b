/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/watchpoints.hpp"

#include <algorithm>

namespace repscope {

ArmDecision WatchpointUnit::request_arm(const WatchpointSlot& candidate) {
    requests_seen_++;
    if (capacity_ == 0 || slots_.size() < capacity_) {
        slots_.push_back(Armed{candidate, next_seq_++});
        return {ArmOutcome::ArmedNewSlot, std::nullopt};
    }
    // All registers busy: keep the newcomer with probability W/t.
    const double keep = static_cast<double>(capacity_) / static_cast<double>(requests_seen_);
    if (rng_.u01() >= keep) return {ArmOutcome::Rejected, std::nullopt};
    const size_t victim = static_cast<size_t>(rng_.bounded(slots_.size()));
    WatchpointSlot evicted = slots_[victim].slot;
    slots_[victim] = Armed{candidate, next_seq_++};
    return {ArmOutcome::ReplacedSlot, evicted};
}

std::optional<Trap> WatchpointUnit::check_trap(ObjectId obj_id, uint64_t offset, uint32_t width,
                                               AccessOp op, uint64_t value,
                                               ContextId access_ctx_id) {
    size_t hit = slots_.size();
    uint64_t best_seq = UINT64_MAX;
    for (size_t i = 0; i < slots_.size(); ++i) {
        const Armed& a = slots_[i];
        if (a.slot.target_obj_id != obj_id) continue;
        const uint64_t a_end = a.slot.target_offset + a.slot.width;
        if (offset + width <= a.slot.target_offset || a_end <= offset) continue;
        if (a.seq < best_seq) {
            best_seq = a.seq;
            hit = i;
        }
    }
    if (hit == slots_.size()) return std::nullopt;

    Trap trap{slots_[hit].slot, value, width, op, access_ctx_id};
    slots_.erase(slots_.begin() + static_cast<ptrdiff_t>(hit));
    return trap;
}

size_t WatchpointUnit::disarm_for_object(ObjectId obj_id) {
    const size_t before = slots_.size();
    std::erase_if(slots_, [&](const Armed& a) { return a.slot.target_obj_id == obj_id; });
    return before - slots_.size();
}

std::vector<WatchpointSlot> WatchpointUnit::armed_slots() const {
    std::vector<Armed> sorted = slots_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Armed& a, const Armed& b) { return a.seq < b.seq; });
    std::vector<WatchpointSlot> out;
    out.reserve(sorted.size());
    for (const auto& a : sorted) out.push_back(a.slot);
    return out;
}

}  // namespace repscope
