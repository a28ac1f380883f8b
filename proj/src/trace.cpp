/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/trace.hpp"

#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace repscope {

using ordered_json = nlohmann::ordered_json;

namespace {

uint64_t require_u64(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_unsigned())
        throw MalformedRecord(std::string("missing or non-unsigned field '") + key + "'");
    return it->get<uint64_t>();
}

std::string require_str(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw MalformedRecord(std::string("missing or non-string field '") + key + "'");
    return it->get<std::string>();
}

std::vector<FrameId> require_ctx(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array())
        throw MalformedRecord(std::string("missing or non-array field '") + key + "'");
    std::vector<FrameId> ctx;
    ctx.reserve(it->size());
    for (const auto& el : *it) {
        if (!el.is_number_unsigned())
            throw MalformedRecord("frame id must be an unsigned integer");
        uint64_t v = el.get<uint64_t>();
        if (v > UINT32_MAX) throw MalformedRecord("frame id out of range");
        ctx.push_back(static_cast<FrameId>(v));
    }
    return ctx;
}

bool valid_width(uint64_t w) { return w == 1 || w == 2 || w == 4 || w == 8; }

}  // namespace

TraceEvent parse_event(std::string_view line) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw MalformedRecord("record is not a JSON object");

    TraceEvent ev;
    const std::string kind = require_str(j, "k");

    // frame/gt records may omit tid/ts (they default to 0).
    if (kind == "alloc" || kind == "free" || kind == "acc") {
        uint64_t tid = require_u64(j, "tid");
        if (tid > UINT32_MAX) throw MalformedRecord("tid out of range");
        ev.tid = static_cast<ThreadId>(tid);
        ev.ts = require_u64(j, "ts");
    } else if (j.contains("tid") || j.contains("ts")) {
        uint64_t tid = j.value("tid", 0ULL);
        if (tid > UINT32_MAX) throw MalformedRecord("tid out of range");
        ev.tid = static_cast<ThreadId>(tid);
        ev.ts = j.value("ts", 0ULL);
    }

    if (kind == "alloc") {
        AllocEvent a;
        a.obj_id = require_u64(j, "obj");
        a.base_addr = require_u64(j, "addr");
        a.size = require_u64(j, "size");
        if (a.size == 0) throw MalformedRecord("alloc size must be positive");
        a.alloc_ctx = require_ctx(j, "ctx");
        if (a.alloc_ctx.empty()) throw MalformedRecord("alloc ctx must be nonempty");
        ev.body = std::move(a);
    } else if (kind == "free") {
        FreeEvent f;
        f.obj_id = require_u64(j, "obj");
        ev.body = f;
    } else if (kind == "acc") {
        AccessEvent a;
        const std::string op = require_str(j, "op");
        if (op == "ld") {
            a.op = AccessOp::Load;
        } else if (op == "st") {
            a.op = AccessOp::Store;
        } else {
            throw MalformedRecord("unknown access op '" + op + "'");
        }
        a.addr = require_u64(j, "addr");
        uint64_t w = require_u64(j, "w");
        if (!valid_width(w)) throw MalformedRecord("access width must be 1, 2, 4 or 8");
        a.width = static_cast<uint32_t>(w);
        a.value = require_u64(j, "val");
        a.access_ctx = require_ctx(j, "ctx");
        if (a.access_ctx.empty()) throw MalformedRecord("access ctx must be nonempty");
        ev.body = std::move(a);
    } else if (kind == "frame") {
        FrameTableEvent f;
        uint64_t id = require_u64(j, "id");
        if (id > UINT32_MAX) throw MalformedRecord("frame id out of range");
        f.def.frame_id = static_cast<FrameId>(id);
        f.def.method = require_str(j, "m");
        f.def.file = require_str(j, "f");
        uint64_t l = require_u64(j, "l");
        if (l > UINT32_MAX) throw MalformedRecord("line out of range");
        f.def.line = static_cast<uint32_t>(l);
        ev.body = std::move(f);
    } else if (kind == "gt") {
        GroundTruthEvent g;
        g.obj_id = require_u64(j, "obj");
        g.group_label = j.value("grp", std::string());
        ev.body = std::move(g);
    } else {
        throw MalformedRecord("unknown record kind '" + kind + "'");
    }
    return ev;
}

std::string write_event(const TraceEvent& event) {
    ordered_json j;
    if (event.is_alloc()) {
        const auto& a = event.alloc();
        if (a.size == 0) throw InvariantViolation("alloc size must be positive");
        if (a.alloc_ctx.empty()) throw InvariantViolation("alloc ctx must be nonempty");
        j["k"] = "alloc";
        j["tid"] = event.tid;
        j["ts"] = event.ts;
        j["obj"] = a.obj_id;
        j["addr"] = a.base_addr;
        j["size"] = a.size;
        j["ctx"] = a.alloc_ctx;
    } else if (event.is_free()) {
        j["k"] = "free";
        j["tid"] = event.tid;
        j["ts"] = event.ts;
        j["obj"] = event.free().obj_id;
    } else if (event.is_access()) {
        const auto& a = event.access();
        if (!valid_width(a.width)) throw InvariantViolation("access width must be 1, 2, 4 or 8");
        if (a.access_ctx.empty()) throw InvariantViolation("access ctx must be nonempty");
        j["k"] = "acc";
        j["tid"] = event.tid;
        j["ts"] = event.ts;
        j["op"] = a.op == AccessOp::Load ? "ld" : "st";
        j["addr"] = a.addr;
        j["w"] = a.width;
        j["val"] = a.value;
        j["ctx"] = a.access_ctx;
    } else if (event.is_frame()) {
        const auto& f = event.frame().def;
        j["k"] = "frame";
        j["tid"] = event.tid;
        j["ts"] = event.ts;
        j["id"] = f.frame_id;
        j["m"] = f.method;
        j["f"] = f.file;
        j["l"] = f.line;
    } else {
        const auto& g = event.ground_truth();
        j["k"] = "gt";
        j["tid"] = event.tid;
        j["ts"] = event.ts;
        j["obj"] = g.obj_id;
        j["grp"] = g.group_label;
    }
    return j.dump();
}

TraceStats validate_trace(const std::vector<TraceEvent>& events) {
    TraceStats stats;

    struct LiveRange {
        uint64_t end;
        ObjectId obj_id;
    };
    std::map<uint64_t, LiveRange> live;           // base -> range
    std::unordered_map<ObjectId, uint64_t> base_of;
    std::unordered_map<ThreadId, uint64_t> last_ts;
    std::unordered_set<ThreadId> tids;
    std::unordered_set<FrameId> frames;

    auto overlaps = [&](uint64_t base, uint64_t size) {
        auto it = live.upper_bound(base);
        if (it != live.begin()) {
            auto prev = std::prev(it);
            if (prev->second.end > base) return true;
        }
        return it != live.end() && it->first < base + size;
    };

    auto frames_known = [&](const std::vector<FrameId>& ctx) {
        for (FrameId f : ctx)
            if (!frames.contains(f)) return false;
        return true;
    };

    for (const auto& ev : events) {
        stats.event_count++;
        if (ev.is_alloc() || ev.is_free() || ev.is_access()) {
            tids.insert(ev.tid);
            auto [it, fresh] = last_ts.try_emplace(ev.tid, ev.ts);
            if (!fresh) {
                if (ev.ts <= it->second) {
                    stats.order_violation_count++;
                    stats.malformed_count++;
                    continue;
                }
                it->second = ev.ts;
            }
        }

        if (ev.is_frame()) {
            frames.insert(ev.frame().def.frame_id);
            stats.frame_count++;
        } else if (ev.is_ground_truth()) {
            stats.gt_count++;
        } else if (ev.is_alloc()) {
            const auto& a = ev.alloc();
            if (!frames_known(a.alloc_ctx)) {
                stats.missing_frame_count++;
                stats.malformed_count++;
            } else if (base_of.contains(a.obj_id)) {
                stats.reused_id_count++;
                stats.malformed_count++;
            } else if (overlaps(a.base_addr, a.size)) {
                stats.overlap_count++;
                stats.malformed_count++;
            } else {
                live[a.base_addr] = {a.base_addr + a.size, a.obj_id};
                base_of[a.obj_id] = a.base_addr;
                stats.alloc_count++;
            }
        } else if (ev.is_free()) {
            auto it = base_of.find(ev.free().obj_id);
            if (it == base_of.end()) {
                stats.unknown_free_count++;
                stats.malformed_count++;
            } else {
                live.erase(it->second);
                base_of.erase(it);
                stats.free_count++;
            }
        } else {
            const auto& a = ev.access();
            if (!frames_known(a.access_ctx)) {
                stats.missing_frame_count++;
                stats.malformed_count++;
                continue;
            }
            stats.access_count++;
            auto it = live.upper_bound(a.addr);
            bool inside = false;
            if (it != live.begin()) {
                auto prev = std::prev(it);
                inside = a.addr < prev->second.end;
            }
            if (!inside) stats.outside_access_count++;
        }
    }
    stats.thread_count = tids.size();
    return stats;
}

std::vector<TraceEvent> load_trace(const std::string& path, uint64_t skip_budget) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file: " + path);
    std::vector<TraceEvent> events;
    std::string line;
    uint64_t skipped = 0;
    uint64_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        try {
            events.push_back(parse_event(line));
        } catch (const MalformedRecord& e) {
            if (++skipped > skip_budget)
                throw MalformedRecord(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return events;
}

void save_trace(const std::string& path, const std::vector<TraceEvent>& events) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    for (const auto& ev : events) out << write_event(ev) << '\n';
    if (!out) throw Error("write failed: " + path);
}

}  // namespace repscope
