/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_ANALYZER_HPP
#define REPSCOPE_ANALYZER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repscope/metrics.hpp"
#include "repscope/oracle.hpp"
#include "repscope/profile.hpp"

namespace repscope {

// Where per-context alpha comes from. Sampling cannot measure alpha; it is
// either supplied by the oracle (exhaustive run) or defaulted. A default of
// 0 makes omega = theta, which is the optimistic reading.
struct AlphaSource {
    std::map<std::vector<FrameId>, double> by_path;
    double default_alpha = 0.0;
    std::string origin = "default";

    static AlphaSource from_oracle(const GroundTruthReport& report);
    static AlphaSource from_oracle_json(const std::string& text);
};

struct ReportAccessPath {
    std::vector<FrameId> path;
    std::vector<std::string> methods;
    uint64_t comparisons = 0;
};

struct ReportEntry {
    std::vector<FrameId> alloc_path;
    std::vector<std::string> alloc_methods;
    uint64_t equivalent = 0;
    uint64_t different = 0;
    uint64_t objects = 0;
    uint64_t samples = 0;
    uint64_t accesses = 0;
    double theta = 0.0;
    std::optional<double> alpha;
    std::optional<BoundValue> omega;
    std::optional<BoundValue> gamma;  // needs objects >= 2
    bool suspect = false;
    std::vector<ReportAccessPath> access_paths;  // comparisons desc, then path
};

// Contexts ordered by theta descending; ties broken by equivalent count,
// then by allocation path. Only contexts with comparisons appear.
struct RankedReport {
    std::vector<ReportEntry> entries;
    std::optional<RatioSummary> ratio;  // empty when nothing was compared
    double threshold = kDefaultSuspectThreshold;
    std::string alpha_origin = "default";
    uint64_t contexts_without_comparisons = 0;
    RunMeta meta;
};

RankedReport rank(const Profile& profile, double threshold = kDefaultSuspectThreshold,
                  const AlphaSource& alpha = {});

// Report serializations. All three are byte-stable for a fixed input.
std::string emit_json(const RankedReport& report);    // schema "v1"
std::string emit_folded(const RankedReport& report);  // frame;frame;... count
std::string emit_text(const RankedReport& report);

// Ground-truth report serialization (schema "v1").
std::string oracle_to_json(const GroundTruthReport& report);

}  // namespace repscope

#endif
