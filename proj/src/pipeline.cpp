/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include <nlohmann/json.hpp>

#include "repscope/detector.hpp"
#include "repscope/metrics.hpp"
#include "repscope/object_index.hpp"
#include "repscope/rng.hpp"
#include "repscope/watchpoints.hpp"

namespace repscope {

using ordered_json = nlohmann::ordered_json;

namespace {

struct Worker {
    ContextTree access_tree;
    LoadSampler sampler;
    WatchpointUnit unit;
    ReplicaDetector detector;

    Worker(const DetectConfig& config, ThreadId tid)
        : sampler(config.sampler, tid),
          unit(config.watchpoints, Rng::mix(Rng::mix(config.sampler.seed, 0x7770), tid)),
          detector(DetectorConfig{config.queue_capacity}, unit) {}
};

}  // namespace

Profile detect(const std::vector<TraceEvent>& events, const DetectConfig& config) {
    config.sampler.validate();

    std::map<FrameId, FrameDef> frames;
    ContextTree alloc_tree;  // shared allocation-context interner (the map side)
    ObjectIndex index;
    std::map<ThreadId, std::unique_ptr<Worker>> workers;

    auto worker_for = [&](ThreadId tid) -> Worker& {
        auto it = workers.find(tid);
        if (it == workers.end())
            it = workers.emplace(tid, std::make_unique<Worker>(config, tid)).first;
        return *it->second;
    };

    for (const TraceEvent* evp : replay_order(events)) {
        const TraceEvent& ev = *evp;
        if (ev.is_frame()) {
            frames.emplace(ev.frame().def.frame_id, ev.frame().def);
        } else if (ev.is_alloc()) {
            const auto& a = ev.alloc();
            const ContextId ctx = alloc_tree.intern_path(a.alloc_ctx);
            const ObjectRecord& rec = index.register_alloc(a.obj_id, a.base_addr, a.size, ctx);
            worker_for(ev.tid).detector.on_alloc(ctx, a.obj_id, a.size, rec.generation);
        } else if (ev.is_free()) {
            index.release(ev.free().obj_id);
            for (auto& [tid, w] : workers) w->detector.on_free(ev.free().obj_id);
        } else if (ev.is_access()) {
            const auto& acc = ev.access();
            Worker& w = worker_for(ev.tid);
            const auto hit = index.resolve(acc.addr);
            const bool sampled = w.sampler.offer(acc);
            if (!hit) continue;

            w.detector.count_access(hit->record->alloc_ctx_id);
            const ContextId access_ctx = w.access_tree.intern_path(acc.access_ctx);

            // The sample is serviced first: the watchpoint it arms may trap
            // on this very access, which is exactly the predecessor-versus-
            // current comparison at a shared read site.
            if (sampled && acc.op == AccessOp::Load)
                w.detector.on_sample(materialize(acc, ev.ts, *hit, access_ctx));

            if (auto trap = w.unit.check_trap(hit->record->obj_id, hit->offset, acc.width,
                                              acc.op, acc.value, access_ctx)) {
                w.detector.on_trap(*trap);
            }
        }
    }

    // Per-thread raw profiles, merged in thread-id order.
    const uint64_t fp = Profile::frame_fingerprint(frames);
    std::vector<Profile> parts;
    for (const auto& [tid, w] : workers) {
        Profile p;
        p.frames = frames;
        p.meta = config.meta();
        p.tree.set_frame_table_fingerprint(fp);
        for (const RawContextCounters& rc : w->detector.finalize()) {
            ContextCounters counters;
            counters.equivalent = rc.equivalent;
            counters.different = rc.different;
            counters.objects = rc.objects;
            counters.samples = rc.samples;
            counters.accesses = rc.accesses;
            for (const auto& [actx, n] : rc.comparisons_by_access_ctx)
                counters.comparisons_by_access[p.tree.intern_path(w->access_tree.path_of(actx))] =
                    n;
            p.contexts.emplace(p.tree.intern_path(alloc_tree.path_of(rc.alloc_ctx_id)),
                               std::move(counters));
        }
        parts.push_back(std::move(p));
    }
    if (parts.empty()) {
        Profile p;
        p.frames = frames;
        p.meta = config.meta();
        p.tree.set_frame_table_fingerprint(fp);
        return p;
    }
    return merge_profiles(parts);
}

Containment check_containment(const OracleContext& ctx) {
    if (!ctx.theta_defined || ctx.x < 2) return Containment::Insufficient;
    const double theta = ctx.theta_exact;
    const double alpha = ctx.alpha_exact;
    if (!(theta > alpha)) return Containment::Vacuous;

    // Tied group sizes (or a single group) make the lower bound non-strict.
    std::vector<size_t> sizes;
    sizes.reserve(ctx.groups.size());
    for (const auto& g : ctx.groups) sizes.push_back(g.size());
    std::sort(sizes.begin(), sizes.end());
    bool tied = sizes.size() <= 1;
    for (size_t i = 1; i < sizes.size() && !tied; ++i) tied = sizes[i] == sizes[i - 1];

    const double omega = theta - alpha;
    const double ratio = ctx.largest_ratio;
    if (!(ratio > omega || (tied && ratio >= omega))) return Containment::ViolatedLower;

    // Uncapped upper bound.
    const double t = 1.0 / static_cast<double>(ctx.x - 1);
    const double a = (theta - alpha) / (1.0 - alpha);
    const double gamma = t / 2.0 + std::sqrt(t * t / 4.0 + a);
    if (!(ratio < gamma)) return Containment::ViolatedUpper;
    return Containment::Ok;
}

const char* to_string(Containment c) {
    switch (c) {
        case Containment::Ok: return "ok";
        case Containment::ViolatedLower: return "violated_lower";
        case Containment::ViolatedUpper: return "violated_upper";
        case Containment::Vacuous: return "vacuous";
        case Containment::Insufficient: return "insufficient";
    }
    return "unknown";
}

E2EResult run_e2e(const GenConfig& gen_config, const DetectConfig& detect_config,
                  double threshold) {
    E2EResult result;
    result.trace = generate(gen_config);
    result.profile = detect(result.trace, detect_config);
    result.oracle = exhaustive_oracle(result.trace);
    result.report = rank(result.profile, threshold, AlphaSource::from_oracle(result.oracle));

    char buf[64];
    auto fmt6 = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::strtod(buf, nullptr);
    };

    ordered_json j;
    j["version"] = "v1";
    ordered_json jctx = ordered_json::array();
    double max_abs_error = 0.0;
    for (const auto& entry : result.report.entries) {
        const OracleContext* oc = result.oracle.find(entry.alloc_path);
        ordered_json row;
        row["alloc_methods"] = entry.alloc_methods;
        row["theta_est"] = fmt6(entry.theta);
        if (oc && oc->theta_defined) {
            const double err = std::fabs(entry.theta - oc->theta_exact);
            max_abs_error = std::max(max_abs_error, err);
            row["theta_exact"] = fmt6(oc->theta_exact);
            row["abs_error"] = fmt6(err);
            row["alpha_exact"] = fmt6(oc->alpha_exact);
            row["largest_ratio"] = fmt6(oc->largest_ratio);
            row["containment"] = to_string(check_containment(*oc));
        }
        row["suspect"] = entry.suspect;
        jctx.push_back(std::move(row));
    }
    j["contexts"] = std::move(jctx);
    j["max_abs_error"] = fmt6(max_abs_error);
    result.summary_json = j.dump(2) + "\n";
    return result;
}

}  // namespace repscope
