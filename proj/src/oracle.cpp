/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace repscope {

namespace {

struct Read {
    std::vector<FrameId> access_path;
    uint64_t offset;
    uint32_t width;
    uint64_t value;

    bool operator==(const Read&) const = default;
    auto operator<=>(const Read&) const = default;
};

struct ObjInfo {
    ObjectId id = 0;
    ThreadId tid = 0;
    uint64_t size = 0;
    uint32_t generation = 0;
    std::vector<FrameId> alloc_path;
    std::vector<Read> reads;
    std::optional<std::string> label;
};

// Chain of consecutively first-read objects per (tid, context), mirroring
// how detection rotates to newer generations and drops superseded ones.
struct PairingChain {
    ObjectId curr = 0;
    uint32_t curr_gen = 0;
    bool has_curr = false;
};

struct PairRecord {
    ObjectId prev;
    ObjectId curr;
    size_t prev_len;  // predecessor reads visible when the pair formed
};

}  // namespace

std::vector<const TraceEvent*> replay_order(const std::vector<TraceEvent>& events) {
    std::vector<const TraceEvent*> order;
    order.reserve(events.size());
    for (const auto& ev : events) order.push_back(&ev);
    std::stable_sort(order.begin(), order.end(), [](const TraceEvent* a, const TraceEvent* b) {
        if (a->ts != b->ts) return a->ts < b->ts;
        return a->tid < b->tid;
    });
    return order;
}

GroundTruthReport exhaustive_oracle(const std::vector<TraceEvent>& events) {
    // Own address resolution: live intervals only, last writer wins.
    std::map<uint64_t, std::pair<uint64_t, ObjectId>> live;  // base -> (end, obj)
    std::unordered_map<ObjectId, uint64_t> live_base;

    std::unordered_map<ObjectId, ObjInfo> objects;
    std::map<std::vector<FrameId>, uint32_t> generation_counter;
    std::map<std::pair<ThreadId, std::vector<FrameId>>, PairingChain> chains;
    std::vector<PairRecord> pairs;

    for (const TraceEvent* evp : replay_order(events)) {
        const TraceEvent& ev = *evp;
        if (ev.is_alloc()) {
            const auto& a = ev.alloc();
            ObjInfo info;
            info.id = a.obj_id;
            info.tid = ev.tid;
            info.size = a.size;
            info.alloc_path = a.alloc_ctx;
            info.generation = generation_counter[a.alloc_ctx]++;
            objects.emplace(a.obj_id, std::move(info));
            live[a.base_addr] = {a.base_addr + a.size, a.obj_id};
            live_base[a.obj_id] = a.base_addr;
        } else if (ev.is_free()) {
            auto it = live_base.find(ev.free().obj_id);
            if (it != live_base.end()) {
                live.erase(it->second);
                live_base.erase(it);
            }
        } else if (ev.is_ground_truth()) {
            auto it = objects.find(ev.ground_truth().obj_id);
            if (it != objects.end()) it->second.label = ev.ground_truth().group_label;
        } else if (ev.is_access()) {
            const auto& acc = ev.access();
            if (acc.op != AccessOp::Load) continue;
            auto it = live.upper_bound(acc.addr);
            if (it == live.begin()) continue;
            --it;
            if (acc.addr >= it->second.first) continue;
            ObjInfo& obj = objects.at(it->second.second);

            const bool first_read = obj.reads.empty();
            obj.reads.push_back(
                Read{acc.access_ctx, acc.addr - it->first, acc.width, acc.value});

            if (first_read) {
                PairingChain& chain = chains[{obj.tid, obj.alloc_path}];
                if (!chain.has_curr) {
                    chain.has_curr = true;
                    chain.curr = obj.id;
                    chain.curr_gen = obj.generation;
                } else if (obj.generation > chain.curr_gen) {
                    pairs.push_back(
                        PairRecord{chain.curr, obj.id, objects.at(chain.curr).reads.size()});
                    chain.curr = obj.id;
                    chain.curr_gen = obj.generation;
                }
                // An older generation showing up late is superseded already;
                // detection ignores it, so the oracle does too.
            }
        }
    }

    // Close the read window of every object: reads past the point where a
    // successor took over do not take part in pairing.
    std::unordered_map<ObjectId, size_t> window;
    for (auto& [id, obj] : objects) window[id] = obj.reads.size();
    for (const PairRecord& p : pairs) window[p.prev] = std::min(window[p.prev], p.prev_len);

    // Pairwise positional comparison.
    struct Accum {
        uint64_t equal = 0, total = 0, equal_ne = 0, total_ne = 0;
    };
    std::map<std::vector<FrameId>, Accum> accums;
    for (const PairRecord& p : pairs) {
        const ObjInfo& prev = objects.at(p.prev);
        const ObjInfo& curr = objects.at(p.curr);
        if (prev.size != curr.size) continue;  // different sizes never pair

        const bool identical = prev.reads == curr.reads;
        const size_t prev_len = std::min(p.prev_len, prev.reads.size());
        const size_t curr_len = window.at(p.curr);
        const size_t n = std::min(prev_len, curr_len);
        Accum& acc = accums[prev.alloc_path];
        for (size_t k = 0; k < n; ++k) {
            const Read& a = prev.reads[k];
            const Read& b = curr.reads[k];
            if (a.access_path != b.access_path || a.offset != b.offset || a.width != b.width)
                continue;
            const bool eq = a.value == b.value;
            acc.total++;
            acc.equal += eq;
            if (!identical) {
                acc.total_ne++;
                acc.equal_ne += eq;
            }
        }
    }

    // Content groups per context over read objects, plus label verification.
    std::map<std::vector<FrameId>, OracleContext> report;
    std::map<std::vector<FrameId>, std::map<std::pair<uint64_t, std::vector<Read>>,
                                            std::vector<ObjectId>>> grouping;
    for (auto& [id, obj] : objects) {
        OracleContext& ctx = report[obj.alloc_path];
        ctx.alloc_path = obj.alloc_path;
        ctx.x++;
        if (obj.reads.empty())
            ctx.unread.push_back(obj.id);
        else
            grouping[obj.alloc_path][{obj.size, obj.reads}].push_back(obj.id);
    }

    for (auto& [path, ctx] : report) {
        std::sort(ctx.unread.begin(), ctx.unread.end());
        auto git = grouping.find(path);
        if (git != grouping.end()) {
            for (auto& [key, members] : git->second) {
                std::sort(members.begin(), members.end());
                ctx.x_n = std::max<uint64_t>(ctx.x_n, members.size());
                ctx.groups.push_back(members);
            }
            std::sort(ctx.groups.begin(), ctx.groups.end());
        }
        ctx.largest_ratio = ctx.x ? static_cast<double>(ctx.x_n) / static_cast<double>(ctx.x) : 0.0;

        auto ait = accums.find(path);
        if (ait != accums.end() && ait->second.total > 0) {
            const Accum& acc = ait->second;
            ctx.equal = acc.equal;
            ctx.total = acc.total;
            ctx.equal_nonequiv = acc.equal_ne;
            ctx.total_nonequiv = acc.total_ne;
            ctx.theta_defined = true;
            ctx.theta_exact = static_cast<double>(acc.equal) / static_cast<double>(acc.total);
            ctx.alpha_exact = acc.total_ne == 0 ? 0.0
                                                : static_cast<double>(acc.equal_ne) /
                                                      static_cast<double>(acc.total_ne);
        }
    }

    // Labels, when present, must induce the same partition over read objects.
    for (const auto& [path, groups_by_content] : grouping) {
        std::unordered_map<ObjectId, const std::vector<Read>*> content_of;
        bool any_label = false;
        std::map<std::string, std::vector<ObjectId>> by_label;
        for (const auto& [key, members] : groups_by_content) {
            for (ObjectId id : members) {
                const ObjInfo& obj = objects.at(id);
                if (obj.label) {
                    any_label = true;
                    by_label[*obj.label].push_back(id);
                }
            }
        }
        if (!any_label) continue;
        // Two objects share a label iff they share a content group.
        std::unordered_map<ObjectId, size_t> group_of;
        size_t gi = 0;
        for (const auto& [key, members] : groups_by_content) {
            for (ObjectId id : members) group_of[id] = gi;
            gi++;
        }
        for (const auto& [label, members] : by_label) {
            for (size_t i = 1; i < members.size(); ++i) {
                if (group_of.at(members[i]) != group_of.at(members[0]))
                    throw LabelMismatch("objects labeled '" + label +
                                        "' have diverging contents");
            }
        }
        std::unordered_map<size_t, std::string> label_of_group;
        for (const auto& [label, members] : by_label) {
            for (ObjectId id : members) {
                auto [it, fresh] = label_of_group.try_emplace(group_of.at(id), label);
                if (!fresh && it->second != label)
                    throw LabelMismatch("content-identical objects carry labels '" +
                                        it->second + "' and '" + label + "'");
            }
        }
    }

    GroundTruthReport out;
    out.contexts.reserve(report.size());
    for (auto& [path, ctx] : report) out.contexts.push_back(std::move(ctx));
    return out;
}

const OracleContext* GroundTruthReport::find(const std::vector<FrameId>& alloc_path) const {
    for (const auto& ctx : contexts)
        if (ctx.alloc_path == alloc_path) return &ctx;
    return nullptr;
}

std::vector<ThetaAlpha> exhaustive_theta_alpha(const std::vector<TraceEvent>& events) {
    GroundTruthReport report = exhaustive_oracle(events);
    std::vector<ThetaAlpha> out;
    out.reserve(report.contexts.size());
    for (const auto& ctx : report.contexts)
        out.push_back(ThetaAlpha{ctx.alloc_path, ctx.theta_defined, ctx.theta_exact,
                                 ctx.alpha_exact});
    return out;
}

GroundTruthReport exact_groups(const std::vector<TraceEvent>& events) {
    return exhaustive_oracle(events);
}

}  // namespace repscope
