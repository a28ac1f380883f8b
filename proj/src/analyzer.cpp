/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/analyzer.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace repscope {

using ordered_json = nlohmann::ordered_json;

namespace {

// Report numbers carry 6 significant digits.
double round6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

std::vector<std::string> method_names(const std::map<FrameId, FrameDef>& frames,
                                      const std::vector<FrameId>& path) {
    std::vector<std::string> out;
    out.reserve(path.size());
    for (FrameId f : path) {
        auto it = frames.find(f);
        out.push_back(it == frames.end() ? "frame_" + std::to_string(f) : it->second.method);
    }
    return out;
}

}  // namespace

AlphaSource AlphaSource::from_oracle(const GroundTruthReport& report) {
    AlphaSource src;
    src.origin = "oracle";
    for (const auto& ctx : report.contexts) src.by_path[ctx.alloc_path] = ctx.alpha_exact;
    return src;
}

AlphaSource AlphaSource::from_oracle_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("version", "") != "v1")
        throw Error("not a v1 oracle report");
    AlphaSource src;
    src.origin = "oracle";
    for (const auto& ctx : j.at("contexts")) {
        src.by_path[ctx.at("alloc_path").get<std::vector<FrameId>>()] =
            ctx.at("alpha_exact").get<double>();
    }
    return src;
}

RankedReport rank(const Profile& profile, double threshold, const AlphaSource& alpha) {
    RankedReport report;
    report.threshold = threshold;
    report.alpha_origin = alpha.origin;
    report.meta = profile.meta;

    std::vector<RawContextCounters> raw;
    for (const auto& [ctx, counters] : profile.contexts) {
        const uint64_t comparisons = counters.equivalent + counters.different;
        if (comparisons == 0) {
            report.contexts_without_comparisons++;
            continue;
        }
        ReportEntry entry;
        entry.alloc_path = profile.tree.path_of(ctx);
        entry.alloc_methods = method_names(profile.frames, entry.alloc_path);
        entry.equivalent = counters.equivalent;
        entry.different = counters.different;
        entry.objects = counters.objects;
        entry.samples = counters.samples;
        entry.accesses = counters.accesses;
        entry.theta = theta(counters.equivalent, counters.different);

        auto it = alpha.by_path.find(entry.alloc_path);
        const double a = it != alpha.by_path.end() ? it->second : alpha.default_alpha;
        if (a >= 0.0 && a < 1.0) {
            entry.alpha = a;
            entry.omega = lower_bound(entry.theta, a);
            if (entry.objects >= 2) entry.gamma = upper_bound(entry.theta, a, entry.objects);
        }
        entry.suspect = is_suspect(entry.theta, threshold);

        for (const auto& [actx, n] : counters.comparisons_by_access) {
            ReportAccessPath ap;
            ap.path = profile.tree.path_of(actx);
            ap.methods = method_names(profile.frames, ap.path);
            ap.comparisons = n;
            entry.access_paths.push_back(std::move(ap));
        }
        std::sort(entry.access_paths.begin(), entry.access_paths.end(),
                  [](const ReportAccessPath& x, const ReportAccessPath& y) {
                      if (x.comparisons != y.comparisons) return x.comparisons > y.comparisons;
                      return x.path < y.path;
                  });

        RawContextCounters rc;
        rc.equivalent = counters.equivalent;
        rc.different = counters.different;
        raw.push_back(rc);
        report.entries.push_back(std::move(entry));
    }

    std::sort(report.entries.begin(), report.entries.end(),
              [](const ReportEntry& x, const ReportEntry& y) {
                  if (x.theta != y.theta) return x.theta > y.theta;
                  if (x.equivalent != y.equivalent) return x.equivalent > y.equivalent;
                  return x.alloc_path < y.alloc_path;
              });

    if (!raw.empty()) report.ratio = replication_ratio(raw);
    return report;
}

std::string emit_json(const RankedReport& report) {
    ordered_json j;
    j["version"] = "v1";
    j["threshold"] = round6(report.threshold);
    j["alpha_source"] = report.alpha_origin;
    if (report.ratio) {
        j["replication_ratio"] = {{"pooled", round6(report.ratio->pooled)},
                                  {"macro", round6(report.ratio->macro)}};
    } else {
        j["replication_ratio"] = nullptr;
    }
    j["contexts_without_comparisons"] = report.contexts_without_comparisons;
    j["meta"] = {{"period", report.meta.period},
                 {"jitter", round6(report.meta.jitter)},
                 {"watchpoints", report.meta.watchpoints},
                 {"queue_capacity", report.meta.queue_capacity},
                 {"seed", report.meta.seed}};

    ordered_json jctx = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json row;
        row["alloc_path"] = e.alloc_path;
        row["alloc_methods"] = e.alloc_methods;
        row["theta"] = round6(e.theta);
        row["suspect"] = e.suspect;
        row["equivalent"] = e.equivalent;
        row["different"] = e.different;
        row["objects"] = e.objects;
        row["samples"] = e.samples;
        row["accesses"] = e.accesses;
        if (e.alpha) {
            row["alpha"] = round6(*e.alpha);
            row["omega"] = round6(e.omega->value);
            row["omega_clamped"] = e.omega->clamped;
            if (e.gamma) {
                row["gamma"] = round6(e.gamma->value);
                row["gamma_capped"] = e.gamma->clamped;
            } else {
                row["gamma"] = nullptr;
            }
        }
        ordered_json japs = ordered_json::array();
        for (const auto& ap : e.access_paths)
            japs.push_back({{"path", ap.path},
                            {"methods", ap.methods},
                            {"comparisons", ap.comparisons}});
        row["access_paths"] = std::move(japs);
        jctx.push_back(std::move(row));
    }
    j["contexts"] = std::move(jctx);
    return j.dump(2) + "\n";
}

std::string emit_folded(const RankedReport& report) {
    // One line per (allocation, access) pair, attributed to the access stack;
    // flame-graph collapsers sum identical stacks on their own.
    std::string out;
    std::vector<std::pair<std::vector<FrameId>, const ReportEntry*>> ordered;
    ordered.reserve(report.entries.size());
    for (const auto& e : report.entries) ordered.emplace_back(e.alloc_path, &e);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [alloc_path, entry] : ordered) {
        std::vector<const ReportAccessPath*> aps;
        aps.reserve(entry->access_paths.size());
        for (const auto& ap : entry->access_paths) aps.push_back(&ap);
        std::sort(aps.begin(), aps.end(), [](const ReportAccessPath* a,
                                             const ReportAccessPath* b) {
            return a->path < b->path;
        });
        for (const ReportAccessPath* ap : aps) {
            for (size_t i = 0; i < ap->methods.size(); ++i) {
                if (i) out += ';';
                out += ap->methods[i];
            }
            out += ' ';
            out += std::to_string(ap->comparisons);
            out += '\n';
        }
    }
    return out;
}

std::string emit_text(const RankedReport& report) {
    std::string out;
    char line[512];
    std::snprintf(line, sizeof(line), "replica report  threshold %.2f  alpha: %s\n",
                  report.threshold, report.alpha_origin.c_str());
    out += line;
    if (report.ratio) {
        std::snprintf(line, sizeof(line),
                      "replication ratio  pooled %.4f  macro %.4f\n",
                      report.ratio->pooled, report.ratio->macro);
        out += line;
    } else {
        out += "no comparisons recorded\n";
    }
    if (report.contexts_without_comparisons) {
        std::snprintf(line, sizeof(line), "%llu context(s) had no comparisons\n",
                      static_cast<unsigned long long>(report.contexts_without_comparisons));
        out += line;
    }
    out += "\n  #  theta  omega  gamma       eq     diff     X  suspect  allocation site\n";
    size_t i = 0;
    for (const auto& e : report.entries) {
        std::string site;
        for (size_t k = 0; k < e.alloc_methods.size(); ++k) {
            if (k) site += ";";
            site += e.alloc_methods[k];
        }
        char omega[16] = "     -";
        char gamma[16] = "     -";
        if (e.omega) std::snprintf(omega, sizeof(omega), "%6.3f", e.omega->value);
        if (e.gamma) std::snprintf(gamma, sizeof(gamma), "%6.3f", e.gamma->value);
        std::snprintf(line, sizeof(line), "%3zu  %5.3f %s %s  %7llu  %7llu  %4llu  %-7s  %s\n",
                      ++i, e.theta, omega, gamma,
                      static_cast<unsigned long long>(e.equivalent),
                      static_cast<unsigned long long>(e.different),
                      static_cast<unsigned long long>(e.objects),
                      e.suspect ? "yes" : "no", site.c_str());
        out += line;
    }
    return out;
}

std::string oracle_to_json(const GroundTruthReport& report) {
    ordered_json j;
    j["version"] = "v1";
    ordered_json jctx = ordered_json::array();
    for (const auto& ctx : report.contexts) {
        ordered_json row;
        row["alloc_path"] = ctx.alloc_path;
        row["x"] = ctx.x;
        row["x_n"] = ctx.x_n;
        row["largest_ratio"] = round6(ctx.largest_ratio);
        row["theta_defined"] = ctx.theta_defined;
        row["theta_exact"] = round6(ctx.theta_exact);
        row["alpha_exact"] = round6(ctx.alpha_exact);
        row["equal"] = ctx.equal;
        row["total"] = ctx.total;
        row["equal_nonequiv"] = ctx.equal_nonequiv;
        row["total_nonequiv"] = ctx.total_nonequiv;
        row["groups"] = ctx.groups;
        row["unread"] = ctx.unread;
        jctx.push_back(std::move(row));
    }
    j["contexts"] = std::move(jctx);
    return j.dump(2) + "\n";
}

}  // namespace repscope
