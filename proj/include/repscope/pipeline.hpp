/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_PIPELINE_HPP
#define REPSCOPE_PIPELINE_HPP

#include <string>
#include <vector>

#include "repscope/analyzer.hpp"
#include "repscope/oracle.hpp"
#include "repscope/profile.hpp"
#include "repscope/sampler.hpp"
#include "repscope/workload.hpp"

namespace repscope {

struct DetectConfig {
    SamplerConfig sampler;
    uint64_t watchpoints = 4;      // 0 = unlimited
    uint64_t queue_capacity = 64;  // 0 = unbounded

    RunMeta meta() const {
        return RunMeta{sampler.period, sampler.jitter, watchpoints, queue_capacity,
                       sampler.seed};
    }
};

// Replays the trace: one shared object map, and per-thread sampler,
// watchpoint unit, detector and access-context tree, merged afterwards.
// Deterministic for a fixed (trace, config, seed).
Profile detect(const std::vector<TraceEvent>& events, const DetectConfig& config);

struct E2EResult {
    std::vector<TraceEvent> trace;
    Profile profile;
    GroundTruthReport oracle;
    RankedReport report;
    std::string summary_json;
};

// gen -> detect -> oracle -> rank, plus a summary comparing estimated and
// exact replication factors with bound-containment verdicts per context.
E2EResult run_e2e(const GenConfig& gen_config, const DetectConfig& detect_config,
                  double threshold = kDefaultSuspectThreshold);

// Containment verdict for one context, from exact oracle values.
enum class Containment { Ok, ViolatedLower, ViolatedUpper, Vacuous, Insufficient };

// With exact theta and alpha and theta > alpha, the largest-group ratio lies
// strictly above theta-alpha (non-strict when group sizes tie) and strictly
// below the uncapped upper bound.
Containment check_containment(const OracleContext& ctx);

const char* to_string(Containment c);

}  // namespace repscope

#endif
