/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_ORACLE_HPP
#define REPSCOPE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "repscope/errors.hpp"
#include "repscope/trace.hpp"

namespace repscope {

// Ground truth for one allocation context, from exhaustive replay: every
// read of each newer object is compared against its predecessor's read at
// the matching position (same access context, offset and width, equal object
// sizes), with no sampling, no watchpoint budget and no queue bound.
struct OracleContext {
    std::vector<FrameId> alloc_path;
    uint64_t x = 0;    // allocations at this context
    uint64_t x_n = 0;  // largest group of content-identical read objects
    double largest_ratio = 0.0;  // x_n / x

    uint64_t equal = 0;
    uint64_t total = 0;
    uint64_t equal_nonequiv = 0;  // restricted to pairs that are not identical
    uint64_t total_nonequiv = 0;

    bool theta_defined = false;
    double theta_exact = 0.0;
    double alpha_exact = 0.0;  // 0 when no non-identical pair was compared

    // Content groups over objects with at least one read; objects never read
    // give no evidence and are listed separately.
    std::vector<std::vector<ObjectId>> groups;
    std::vector<ObjectId> unread;
};

struct GroundTruthReport {
    std::vector<OracleContext> contexts;  // sorted by alloc_path

    const OracleContext* find(const std::vector<FrameId>& alloc_path) const;
};

// Full oracle pass. When the trace carries ground-truth labels, the computed
// partition is checked against them; a contradiction throws LabelMismatch
// (it means the generator and oracle disagree, i.e. one of them is broken).
GroundTruthReport exhaustive_oracle(const std::vector<TraceEvent>& events);

// Spec'd entry points, both thin views over exhaustive_oracle.
struct ThetaAlpha {
    std::vector<FrameId> alloc_path;
    bool theta_defined;
    double theta_exact;
    double alpha_exact;
};
std::vector<ThetaAlpha> exhaustive_theta_alpha(const std::vector<TraceEvent>& events);
GroundTruthReport exact_groups(const std::vector<TraceEvent>& events);

// Events in replay order: sorted by (ts, tid), stable. Traces written by the
// generator already satisfy this order.
std::vector<const TraceEvent*> replay_order(const std::vector<TraceEvent>& events);

}  // namespace repscope

#endif
