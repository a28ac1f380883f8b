/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_OBJECT_INDEX_HPP
#define REPSCOPE_OBJECT_INDEX_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>

#include "repscope/errors.hpp"
#include "repscope/trace.hpp"

namespace repscope {

struct ObjectRecord {
    ObjectId obj_id = 0;
    uint64_t base_addr = 0;
    uint64_t size = 0;
    ContextId alloc_ctx_id = 0;
    uint32_t generation = 0;  // ordinal among allocations at alloc_ctx_id
    bool live = false;
};

// The live-interval map: [base, base+size) -> record. Intervals of live
// records are pairwise disjoint; addresses may be reused after release.
class ObjectIndex {
public:
    const ObjectRecord& register_alloc(ObjectId obj_id, uint64_t base_addr, uint64_t size,
                                       ContextId alloc_ctx_id);

    void release(ObjectId obj_id);

    struct Resolved {
        const ObjectRecord* record;
        uint64_t offset;
    };

    // End-exclusive containment lookup; empty when no live object covers addr.
    std::optional<Resolved> resolve(uint64_t addr) const;

    const ObjectRecord* find_live(ObjectId obj_id) const;
    uint32_t allocations_at(ContextId alloc_ctx_id) const;
    size_t live_count() const { return by_base_.size(); }

    // Full scan; used by property tests.
    bool live_intervals_disjoint() const;

private:
    std::map<uint64_t, ObjectRecord> by_base_;
    std::unordered_map<ObjectId, uint64_t> base_of_;
    std::unordered_map<ContextId, uint32_t> alloc_counts_;
};

}  // namespace repscope

#endif
