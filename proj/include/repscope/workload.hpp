/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_WORKLOAD_HPP
#define REPSCOPE_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "repscope/errors.hpp"
#include "repscope/trace.hpp"

namespace repscope {

// Synthetic workload: per context, X objects partitioned into replica groups.
// Objects in one group read back identical values at every position; objects
// in different groups are guaranteed to differ somewhere.
struct GenConfig {
    uint32_t contexts = 1;
    uint32_t objects_per_context = 8;      // X
    std::vector<uint32_t> group_sizes;     // sums to X; empty = one group of X
    uint32_t object_size = 64;             // bytes, multiple of 8
    uint32_t reads_per_object = 8;         // one load per distinct word offset
    uint32_t writes_per_object = 2;        // initializing stores
    uint32_t threads = 1;                  // contexts round-robin over threads

    enum class Alphabet {
        Distinct,      // different groups share no values
        Correlated,    // cross-group positions collide at rate ~correlation
        NearDuplicate  // groups differ in exactly distinct_words positions
    };
    Alphabet alphabet = Alphabet::Distinct;
    double correlation = 0.5;
    uint32_t distinct_words = 2;

    bool free_objects = true;              // free each object after its reads
    bool emit_ground_truth = true;
    uint64_t seed = 1;

    void validate() const;
    std::vector<uint32_t> effective_group_sizes() const;
};

// Deterministic: the same config yields a byte-identical trace.
std::vector<TraceEvent> generate(const GenConfig& config);

// The allocation order the generator uses for one context, as group indices.
// Exposed so tests can check the adjacency structure directly.
std::vector<uint32_t> plan_allocation_order(const std::vector<uint32_t>& group_sizes);

}  // namespace repscope

#endif
