/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_TRACE_HPP
#define REPSCOPE_TRACE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repscope/errors.hpp"

namespace repscope {

using FrameId = uint32_t;
using ObjectId = uint64_t;
using ThreadId = uint32_t;
using ContextId = uint32_t;

// One stack frame definition. Traces carry a frame table up front; events
// reference frames by id only.
struct FrameDef {
    FrameId frame_id = 0;
    std::string method;
    std::string file;
    uint32_t line = 0;

    bool operator==(const FrameDef&) const = default;
};

enum class AccessOp : uint8_t { Load, Store };

struct AllocEvent {
    ObjectId obj_id = 0;
    uint64_t base_addr = 0;
    uint64_t size = 0;                  // bytes, > 0
    std::vector<FrameId> alloc_ctx;     // root first, allocation site last

    bool operator==(const AllocEvent&) const = default;
};

struct FreeEvent {
    ObjectId obj_id = 0;
    bool operator==(const FreeEvent&) const = default;
};

struct AccessEvent {
    AccessOp op = AccessOp::Load;
    uint64_t addr = 0;
    uint32_t width = 8;                 // bytes: 1, 2, 4 or 8
    uint64_t value = 0;                 // zero-extended to 64 bits
    std::vector<FrameId> access_ctx;

    bool operator==(const AccessEvent&) const = default;
};

struct FrameTableEvent {
    FrameDef def;
    bool operator==(const FrameTableEvent&) const = default;
};

// Optional generator annotation naming the replica group an object belongs to.
struct GroundTruthEvent {
    ObjectId obj_id = 0;
    std::string group_label;
    bool operator==(const GroundTruthEvent&) const = default;
};

struct TraceEvent {
    ThreadId tid = 0;
    uint64_t ts = 0;                    // strictly increasing per thread
    std::variant<AllocEvent, FreeEvent, AccessEvent, FrameTableEvent, GroundTruthEvent> body;

    bool operator==(const TraceEvent&) const = default;

    bool is_alloc() const { return std::holds_alternative<AllocEvent>(body); }
    bool is_free() const { return std::holds_alternative<FreeEvent>(body); }
    bool is_access() const { return std::holds_alternative<AccessEvent>(body); }
    bool is_frame() const { return std::holds_alternative<FrameTableEvent>(body); }
    bool is_ground_truth() const { return std::holds_alternative<GroundTruthEvent>(body); }

    const AllocEvent& alloc() const { return std::get<AllocEvent>(body); }
    const FreeEvent& free() const { return std::get<FreeEvent>(body); }
    const AccessEvent& access() const { return std::get<AccessEvent>(body); }
    const FrameTableEvent& frame() const { return std::get<FrameTableEvent>(body); }
    const GroundTruthEvent& ground_truth() const { return std::get<GroundTruthEvent>(body); }
};

// Per-trace validation summary. event_count is the total number of records,
// malformed ones included; typed counts cover only well-formed records, so
// event_count = alloc + free + access + frame + gt + malformed.
struct TraceStats {
    uint64_t event_count = 0;
    uint64_t alloc_count = 0;
    uint64_t free_count = 0;
    uint64_t access_count = 0;
    uint64_t frame_count = 0;
    uint64_t gt_count = 0;
    uint64_t thread_count = 0;
    uint64_t malformed_count = 0;

    // Diagnostics folded into malformed_count.
    uint64_t overlap_count = 0;         // alloc intersecting a live range
    uint64_t reused_id_count = 0;       // alloc of an obj_id that is still live
    uint64_t unknown_free_count = 0;    // free of an id that is not live
    uint64_t order_violation_count = 0; // ts not strictly increasing per thread
    uint64_t missing_frame_count = 0;   // ctx references an undeclared frame

    // Informational only (the event itself is still well-formed).
    uint64_t outside_access_count = 0;  // access not inside any live object

    bool operator==(const TraceStats&) const = default;
};

// Decodes one line-delimited record. Throws MalformedRecord on bad syntax,
// unknown kind, or a field that violates the type invariants.
TraceEvent parse_event(std::string_view line);

// Encodes an event as a single line (no trailing newline). The result parses
// back to an equal event. Throws InvariantViolation for unencodable events.
std::string write_event(const TraceEvent& event);

// Single pass over an event sequence ordered by (tid, ts). Never throws;
// problems accumulate as counts.
TraceStats validate_trace(const std::vector<TraceEvent>& events);

// File helpers used by the CLI. load_trace tolerates up to skip_budget
// malformed lines (skipping them) and throws MalformedRecord beyond that.
std::vector<TraceEvent> load_trace(const std::string& path, uint64_t skip_budget = 0);
void save_trace(const std::string& path, const std::vector<TraceEvent>& events);

}  // namespace repscope

#endif
