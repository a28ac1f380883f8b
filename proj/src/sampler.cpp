/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/sampler.hpp"

#include <cmath>

namespace repscope {

uint64_t next_gap(const SamplerConfig& config, Rng& rng) {
    if (config.jitter == 0.0) return config.period;
    const double p = static_cast<double>(config.period);
    const double lo = p * (1.0 - config.jitter);
    const double hi = p * (1.0 + config.jitter);
    const double gap = lo + rng.u01() * (hi - lo);
    const long long rounded = std::llround(gap);
    return rounded < 1 ? 1 : static_cast<uint64_t>(rounded);
}

std::optional<Sample> materialize(const AccessEvent& event, uint64_t ts,
                                  const ObjectIndex& index, ContextTree& access_tree) {
    auto hit = index.resolve(event.addr);
    if (!hit) return std::nullopt;
    return materialize(event, ts, *hit, access_tree.intern_path(event.access_ctx));
}

Sample materialize(const AccessEvent& event, uint64_t ts, const ObjectIndex::Resolved& hit,
                   ContextId access_ctx_id) {
    Sample s;
    s.obj_id = hit.record->obj_id;
    s.generation = hit.record->generation;
    s.object_size = hit.record->size;
    s.alloc_ctx_id = hit.record->alloc_ctx_id;
    s.access_ctx_id = access_ctx_id;
    s.offset = hit.offset;
    s.value = event.value;
    s.width = event.width;
    s.ts = ts;
    return s;
}

}  // namespace repscope
