/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/profile.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "repscope/rng.hpp"

namespace repscope {

using ordered_json = nlohmann::ordered_json;

uint64_t Profile::frame_fingerprint(const std::map<FrameId, FrameDef>& frames) {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    std::hash<std::string> sh;
    for (const auto& [id, def] : frames) {
        h = Rng::mix(h, id);
        h = Rng::mix(h, sh(def.method));
        h = Rng::mix(h, sh(def.file));
        h = Rng::mix(h, def.line);
    }
    return h;
}

std::string Profile::to_json() const {
    ordered_json j;
    j["version"] = "v1";
    j["meta"] = {{"period", meta.period},
                 {"jitter", meta.jitter},
                 {"watchpoints", meta.watchpoints},
                 {"queue_capacity", meta.queue_capacity},
                 {"seed", meta.seed}};

    ordered_json jframes = ordered_json::array();
    for (const auto& [id, def] : frames)
        jframes.push_back({{"id", id}, {"m", def.method}, {"f", def.file}, {"l", def.line}});
    j["frames"] = std::move(jframes);

    // Contexts sorted by allocation path, not by interning order.
    std::vector<std::pair<std::vector<FrameId>, const ContextCounters*>> rows;
    rows.reserve(contexts.size());
    for (const auto& [ctx, counters] : contexts) rows.emplace_back(tree.path_of(ctx), &counters);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    ordered_json jctx = ordered_json::array();
    for (const auto& [path, counters] : rows) {
        ordered_json row;
        row["alloc_path"] = path;
        row["equivalent"] = counters->equivalent;
        row["different"] = counters->different;
        row["objects"] = counters->objects;
        row["samples"] = counters->samples;
        row["accesses"] = counters->accesses;

        std::vector<std::pair<std::vector<FrameId>, uint64_t>> access_rows;
        access_rows.reserve(counters->comparisons_by_access.size());
        for (const auto& [actx, n] : counters->comparisons_by_access)
            access_rows.emplace_back(tree.path_of(actx), n);
        std::sort(access_rows.begin(), access_rows.end());
        ordered_json japs = ordered_json::array();
        for (const auto& [apath, n] : access_rows)
            japs.push_back({{"path", apath}, {"comparisons", n}});
        row["access_paths"] = std::move(japs);
        jctx.push_back(std::move(row));
    }
    j["contexts"] = std::move(jctx);
    return j.dump(2) + "\n";
}

Profile Profile::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("version", "") != "v1")
        throw Error("not a v1 profile");

    Profile p;
    const auto& meta = j.at("meta");
    p.meta.period = meta.at("period").get<uint64_t>();
    p.meta.jitter = meta.at("jitter").get<double>();
    p.meta.watchpoints = meta.at("watchpoints").get<uint64_t>();
    p.meta.queue_capacity = meta.at("queue_capacity").get<uint64_t>();
    p.meta.seed = meta.at("seed").get<uint64_t>();

    for (const auto& f : j.at("frames")) {
        FrameDef def{f.at("id").get<FrameId>(), f.at("m").get<std::string>(),
                     f.at("f").get<std::string>(), f.at("l").get<uint32_t>()};
        p.frames.emplace(def.frame_id, std::move(def));
    }
    p.tree.set_frame_table_fingerprint(frame_fingerprint(p.frames));

    for (const auto& row : j.at("contexts")) {
        std::vector<FrameId> path = row.at("alloc_path").get<std::vector<FrameId>>();
        ContextCounters counters;
        counters.equivalent = row.at("equivalent").get<uint64_t>();
        counters.different = row.at("different").get<uint64_t>();
        counters.objects = row.at("objects").get<uint64_t>();
        counters.samples = row.at("samples").get<uint64_t>();
        counters.accesses = row.at("accesses").get<uint64_t>();
        for (const auto& ap : row.at("access_paths")) {
            std::vector<FrameId> apath = ap.at("path").get<std::vector<FrameId>>();
            counters.comparisons_by_access[p.tree.intern_path(apath)] =
                ap.at("comparisons").get<uint64_t>();
        }
        p.contexts.emplace(p.tree.intern_path(path), std::move(counters));
    }
    return p;
}

Profile merge_profiles(const Profile& a, const Profile& b) {
    if (a.meta != b.meta)
        throw ConfigConflict("profiles come from runs with different settings");

    Profile out;
    out.meta = a.meta;
    out.frames = a.frames;
    for (const auto& [id, def] : b.frames) {
        auto [it, fresh] = out.frames.emplace(id, def);
        if (!fresh && !(it->second == def))
            throw FrameTableMismatch("frame " + std::to_string(id) +
                                     " has conflicting definitions");
    }
    // Compatibility was just checked id by id; the fingerprint goes on after
    // absorbing so a subset table does not read as a mismatch.
    const std::vector<ContextId> remap_a = out.tree.absorb(a.tree);
    const std::vector<ContextId> remap_b = out.tree.absorb(b.tree);
    out.tree.set_frame_table_fingerprint(Profile::frame_fingerprint(out.frames));

    auto fold = [&](const Profile& src, const std::vector<ContextId>& remap) {
        for (const auto& [ctx, counters] : src.contexts) {
            ContextCounters& dst = out.contexts[remap.at(ctx)];
            dst.equivalent += counters.equivalent;
            dst.different += counters.different;
            dst.objects += counters.objects;
            dst.samples += counters.samples;
            dst.accesses += counters.accesses;
            for (const auto& [actx, n] : counters.comparisons_by_access)
                dst.comparisons_by_access[remap.at(actx)] += n;
        }
    };
    fold(a, remap_a);
    fold(b, remap_b);
    return out;
}

Profile merge_profiles(std::span<const Profile> profiles) {
    if (profiles.empty()) return Profile{};
    Profile out = profiles.front();
    for (size_t i = 1; i < profiles.size(); ++i) out = merge_profiles(out, profiles[i]);
    return out;
}

}  // namespace repscope
