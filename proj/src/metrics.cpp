/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/metrics.hpp"

#include <cmath>

namespace repscope {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || alpha >= 1.0)
        throw AlphaOutOfRange("alpha must be in [0, 1), got " + std::to_string(alpha));
}

}  // namespace

double theta(uint64_t equivalent, uint64_t different) {
    const uint64_t total = equivalent + different;
    if (total == 0) throw NoComparisons("no comparisons recorded for this context");
    return static_cast<double>(equivalent) / static_cast<double>(total);
}

BoundValue prob_a(double theta, double alpha) {
    check_alpha(alpha);
    const double raw = (theta - alpha) / (1.0 - alpha);
    if (raw < 0.0) return {0.0, true};
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

BoundValue lower_bound(double theta, double alpha) {
    check_alpha(alpha);
    const double raw = theta - alpha;
    if (raw < 0.0) return {0.0, true};
    return {raw, false};
}

BoundValue upper_bound(double theta, double alpha, uint64_t x) {
    check_alpha(alpha);
    if (x < 2) throw TooFewObjects("upper bound needs at least 2 objects, got " + std::to_string(x));
    const double t = 1.0 / static_cast<double>(x - 1);
    const double a = prob_a(theta, alpha).value;
    const double raw = t / 2.0 + std::sqrt(t * t / 4.0 + a);
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

BoundInterval bound_interval(double theta, double alpha, uint64_t x) {
    return {lower_bound(theta, alpha), upper_bound(theta, alpha, x)};
}

ScenarioSplit scenario_split(double theta, double alpha) {
    ScenarioSplit s;
    s.a = prob_a(theta, alpha).value;
    s.b = alpha * (1.0 - s.a);
    s.c = 1.0 - s.a - s.b;
    return s;
}

RatioSummary replication_ratio(std::span<const RawContextCounters> contexts) {
    uint64_t equal = 0;
    uint64_t total = 0;
    double theta_sum = 0.0;
    uint64_t with_comparisons = 0;
    for (const auto& c : contexts) {
        const uint64_t n = c.equivalent + c.different;
        if (n == 0) continue;
        equal += c.equivalent;
        total += n;
        theta_sum += static_cast<double>(c.equivalent) / static_cast<double>(n);
        with_comparisons++;
    }
    if (total == 0) throw NoComparisons("no context has any comparisons");
    RatioSummary out;
    out.pooled = static_cast<double>(equal) / static_cast<double>(total);
    out.macro = theta_sum / static_cast<double>(with_comparisons);
    return out;
}

}  // namespace repscope
