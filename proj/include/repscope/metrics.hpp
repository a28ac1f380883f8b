/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_METRICS_HPP
#define REPSCOPE_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "repscope/detector.hpp"
#include "repscope/errors.hpp"

namespace repscope {

// Statistical model of sampled replica detection.
//
// theta  — replication factor: equal comparisons over all comparisons.
// alpha  — chance two non-identical objects still compare equal at a
//          sampled offset; only an exhaustive oracle can measure it.
// A      — chance a random same-context pair is identical: (theta-alpha)/(1-alpha).
// omega  — lower bound on the largest identical-group size ratio: theta-alpha.
// gamma  — upper bound: 1/(2(X-1)) + sqrt(1/(4(X-1)^2) + (theta-alpha)/(1-alpha)).

struct BoundValue {
    double value = 0.0;
    bool clamped = false;  // set when the raw formula left [0, 1]
};

double theta(uint64_t equivalent, uint64_t different);  // throws NoComparisons

BoundValue prob_a(double theta, double alpha);          // throws AlphaOutOfRange
BoundValue lower_bound(double theta, double alpha);
BoundValue upper_bound(double theta, double alpha, uint64_t x);  // throws TooFewObjects

struct BoundInterval {
    BoundValue omega;
    BoundValue gamma;
};

BoundInterval bound_interval(double theta, double alpha, uint64_t x);

// Scenario probabilities B and C are derivable from A and alpha; they are
// debug quantities, not report outputs.
struct ScenarioSplit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;  // a + b + c = 1
};
ScenarioSplit scenario_split(double theta, double alpha);

// Contexts whose replication factor exceeds the threshold get reported.
// 0.6 is the default cut, strictly exceeded.
inline constexpr double kDefaultSuspectThreshold = 0.6;
inline bool is_suspect(double theta_value, double threshold = kDefaultSuspectThreshold) {
    return theta_value > threshold;
}

// Program-level replication ratio. pooled: sum of equal counts over sum of
// all counts; macro: unweighted mean of per-context theta. Contexts without
// comparisons are skipped; throws NoComparisons when none remain.
struct RatioSummary {
    double pooled = 0.0;
    double macro = 0.0;
};
RatioSummary replication_ratio(std::span<const RawContextCounters> contexts);

// Per-context derived metrics as reported.
struct ContextProfile {
    ContextId alloc_ctx_id = 0;
    uint64_t equivalent = 0;
    uint64_t different = 0;
    uint64_t objects = 0;
    uint64_t samples = 0;
    uint64_t accesses = 0;
    double theta = 0.0;
    std::optional<double> alpha;
    std::optional<BoundValue> omega;
    std::optional<BoundValue> gamma;
};

}  // namespace repscope

#endif
