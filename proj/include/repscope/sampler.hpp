/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_SAMPLER_HPP
#define REPSCOPE_SAMPLER_HPP

#include <cstdint>
#include <optional>

#include "repscope/context_tree.hpp"
#include "repscope/errors.hpp"
#include "repscope/object_index.hpp"
#include "repscope/rng.hpp"
#include "repscope/trace.hpp"

namespace repscope {

// Period-based load sampling stands in for PMU event sampling. A period of
// 5,000,000 loads matches production-scale profiling; desk-scale traces use
// far smaller periods.
struct SamplerConfig {
    uint64_t period = 101;       // loads per sample, >= 1
    double jitter = 0.25;        // fraction in [0, 1)
    uint64_t seed = 0x7265707363ULL;

    void validate() const {
        if (period < 1) throw ConfigInvalid("sampling period must be >= 1");
        if (jitter < 0.0 || jitter >= 1.0) throw ConfigInvalid("jitter must be in [0, 1)");
    }
};

// One captured load: which object, where inside it, and what was read.
struct Sample {
    ObjectId obj_id = 0;
    uint32_t generation = 0;
    uint64_t object_size = 0;
    ContextId alloc_ctx_id = 0;
    ContextId access_ctx_id = 0;
    uint64_t offset = 0;
    uint64_t value = 0;
    uint32_t width = 8;
    uint64_t ts = 0;
};

// Draws the next inter-sample gap: uniform over
// [period*(1-jitter), period*(1+jitter)], rounded, never below 1.
uint64_t next_gap(const SamplerConfig& config, Rng& rng);

// Per-thread countdown over Load events. Stores never trigger.
class LoadSampler {
public:
    LoadSampler(const SamplerConfig& config, ThreadId tid)
        : config_(config), rng_(Rng::mix(config.seed, tid)) {
        config_.validate();
        countdown_ = next_gap(config_, rng_);
    }

    // True when this load is the one the countdown elects; the countdown
    // then reloads with a fresh gap.
    bool offer(const AccessEvent& event) {
        if (event.op != AccessOp::Load) return false;
        if (--countdown_ > 0) return false;
        countdown_ = next_gap(config_, rng_);
        return true;
    }

private:
    SamplerConfig config_;
    Rng rng_;
    uint64_t countdown_;
};

// Turns an elected load into a Sample: resolves the address to a live object
// and interns the access context. Empty when the address is untracked.
std::optional<Sample> materialize(const AccessEvent& event, uint64_t ts,
                                  const ObjectIndex& index, ContextTree& access_tree);

// Same, for a caller that already resolved the address and interned the
// access context.
Sample materialize(const AccessEvent& event, uint64_t ts, const ObjectIndex::Resolved& hit,
                   ContextId access_ctx_id);

}  // namespace repscope

#endif
