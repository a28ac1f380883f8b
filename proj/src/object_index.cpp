/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/object_index.hpp"

namespace repscope {

const ObjectRecord& ObjectIndex::register_alloc(ObjectId obj_id, uint64_t base_addr,
                                                uint64_t size, ContextId alloc_ctx_id) {
    if (size == 0) throw OverlapError("zero-sized allocation");
    if (base_of_.contains(obj_id))
        throw OverlapError("obj_id " + std::to_string(obj_id) + " is already live");

    auto next = by_base_.upper_bound(base_addr);
    if (next != by_base_.begin()) {
        auto prev = std::prev(next);
        if (prev->first + prev->second.size > base_addr)
            throw OverlapError("allocation intersects live object " +
                               std::to_string(prev->second.obj_id));
    }
    if (next != by_base_.end() && next->first < base_addr + size)
        throw OverlapError("allocation intersects live object " +
                           std::to_string(next->second.obj_id));

    ObjectRecord rec;
    rec.obj_id = obj_id;
    rec.base_addr = base_addr;
    rec.size = size;
    rec.alloc_ctx_id = alloc_ctx_id;
    rec.generation = alloc_counts_[alloc_ctx_id]++;
    rec.live = true;

    auto [it, inserted] = by_base_.emplace(base_addr, rec);
    base_of_[obj_id] = base_addr;
    return it->second;
}

void ObjectIndex::release(ObjectId obj_id) {
    auto it = base_of_.find(obj_id);
    if (it == base_of_.end())
        throw UnknownObject("release of unknown object " + std::to_string(obj_id));
    by_base_.erase(it->second);
    base_of_.erase(it);
}

std::optional<ObjectIndex::Resolved> ObjectIndex::resolve(uint64_t addr) const {
    auto it = by_base_.upper_bound(addr);
    if (it == by_base_.begin()) return std::nullopt;
    --it;
    const ObjectRecord& rec = it->second;
    if (addr >= rec.base_addr + rec.size) return std::nullopt;
    return Resolved{&rec, addr - rec.base_addr};
}

const ObjectRecord* ObjectIndex::find_live(ObjectId obj_id) const {
    auto it = base_of_.find(obj_id);
    if (it == base_of_.end()) return nullptr;
    return &by_base_.at(it->second);
}

uint32_t ObjectIndex::allocations_at(ContextId alloc_ctx_id) const {
    auto it = alloc_counts_.find(alloc_ctx_id);
    return it == alloc_counts_.end() ? 0 : it->second;
}

bool ObjectIndex::live_intervals_disjoint() const {
    uint64_t prev_end = 0;
    bool first = true;
    for (const auto& [base, rec] : by_base_) {
        if (!first && base < prev_end) return false;
        prev_end = base + rec.size;
        first = false;
    }
    return true;
}

}  // namespace repscope
