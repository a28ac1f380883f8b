/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "repscope/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "repscope/rng.hpp"

namespace repscope {

void GenConfig::validate() const {
    if (contexts < 1) throw ConfigInvalid("contexts must be >= 1");
    if (objects_per_context < 1) throw ConfigInvalid("objects_per_context must be >= 1");
    if (object_size == 0 || object_size % 8 != 0)
        throw ConfigInvalid("object_size must be a positive multiple of 8");
    if (reads_per_object < 1) throw ConfigInvalid("reads_per_object must be >= 1");
    if (reads_per_object > object_size / 8)
        throw ConfigInvalid("reads_per_object exceeds distinct word offsets in object");
    if (writes_per_object > object_size / 8)
        throw ConfigInvalid("writes_per_object exceeds distinct word offsets in object");
    if (threads < 1) throw ConfigInvalid("threads must be >= 1");
    if (correlation < 0.0 || correlation >= 1.0)
        throw ConfigInvalid("correlation must be in [0, 1)");
    if (alphabet == Alphabet::NearDuplicate &&
        (distinct_words < 1 || distinct_words > reads_per_object))
        throw ConfigInvalid("distinct_words must be in [1, reads_per_object]");
    if (!group_sizes.empty()) {
        uint64_t sum = 0;
        for (uint32_t g : group_sizes) {
            if (g == 0) throw ConfigInvalid("group sizes must be positive");
            sum += g;
        }
        if (sum != objects_per_context)
            throw ConfigInvalid("group sizes must sum to objects_per_context");
    }
}

std::vector<uint32_t> GenConfig::effective_group_sizes() const {
    if (!group_sizes.empty()) return group_sizes;
    return {objects_per_context};
}

namespace {

// Run-count assignment: X_n objects of group n split into r_n runs, no two
// runs of one group adjacent. Feasible iff 2*max(r) <= R+1.
std::vector<uint32_t> assign_run_counts(const std::vector<uint32_t>& sizes, uint32_t total_runs) {
    const size_t n = sizes.size();
    std::vector<uint32_t> runs(n, 1);
    const uint32_t cap = (total_runs + 1) / 2;
    uint32_t assigned = static_cast<uint32_t>(n);
    while (assigned < total_runs) {
        // Split whichever group currently has the longest runs.
        size_t pick = n;
        double longest = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (runs[i] >= sizes[i] || runs[i] >= cap) continue;
            double len = static_cast<double>(sizes[i]) / runs[i];
            if (len > longest) {
                longest = len;
                pick = i;
            }
        }
        if (pick == n)
            throw ConfigInvalid("cannot realize requested group interleaving");
        runs[pick]++;
        assigned++;
    }
    return runs;
}

// Standard no-two-adjacent scheduling: next run always comes from the group
// with the most runs left, never repeating the previous group.
std::vector<uint32_t> arrange_runs(const std::vector<uint32_t>& run_counts) {
    std::vector<uint32_t> remaining = run_counts;
    const size_t total = std::accumulate(remaining.begin(), remaining.end(), size_t{0});
    std::vector<uint32_t> order;
    order.reserve(total);
    size_t prev = remaining.size();
    for (size_t placed = 0; placed < total; ++placed) {
        size_t pick = remaining.size();
        uint32_t most = 0;
        for (size_t i = 0; i < remaining.size(); ++i) {
            if (i == prev || remaining[i] == 0) continue;
            if (remaining[i] > most) {
                most = remaining[i];
                pick = i;
            }
        }
        if (pick == remaining.size())
            throw ConfigInvalid("group interleaving has no valid arrangement");
        order.push_back(static_cast<uint32_t>(pick));
        remaining[pick]--;
        prev = pick;
    }
    return order;
}

}  // namespace

std::vector<uint32_t> plan_allocation_order(const std::vector<uint32_t>& sizes) {
    const uint32_t n_groups = static_cast<uint32_t>(sizes.size());
    const uint64_t x = std::accumulate(sizes.begin(), sizes.end(), uint64_t{0});
    std::vector<uint32_t> order;
    order.reserve(x);

    if (n_groups == 1) {
        order.assign(x, 0);
        return order;
    }

    // Pick the number of same-group adjacencies so that the adjacent-pair
    // identical fraction matches the all-pairs identical fraction of the
    // group model, and stays strictly inside the window that keeps the
    // largest-group ratio between its lower and upper bounds.
    const uint32_t x_n = *std::max_element(sizes.begin(), sizes.end());
    const double xd = static_cast<double>(x);
    const double s = static_cast<double>(x_n) / xd;
    const double t = 1.0 / (xd - 1.0);
    double pair_fraction = 0.0;  // sum Xn(Xn-1) / (X(X-1))
    for (uint32_t g : sizes)
        pair_fraction += static_cast<double>(g) * (g - 1.0);
    pair_fraction /= xd * (xd - 1.0);

    const double window_lo = (xd - 1.0) * s * (s - t);
    const double window_hi = (xd - 1.0) * s;
    const int64_t n_min = std::max<int64_t>(0, 2 * static_cast<int64_t>(x_n) -
                                                   static_cast<int64_t>(x) - 1);
    const int64_t n_max = static_cast<int64_t>(x) - n_groups;

    int64_t lo = std::max<int64_t>(n_min, static_cast<int64_t>(std::ceil(window_lo + 1e-6)));
    int64_t hi = std::min<int64_t>(n_max, static_cast<int64_t>(std::floor(window_hi - 1e-6)));
    int64_t target = std::llround((xd - 1.0) * pair_fraction);
    int64_t adjacencies;
    if (lo <= hi) {
        adjacencies = std::clamp(target, lo, hi);
    } else {
        adjacencies = std::clamp(target, n_min, n_max);
    }

    const uint32_t total_runs = static_cast<uint32_t>(x - adjacencies);
    std::vector<uint32_t> run_counts = assign_run_counts(sizes, total_runs);
    std::vector<uint32_t> run_order = arrange_runs(run_counts);

    // Balanced run lengths per group; longer runs first.
    std::vector<uint32_t> runs_left = run_counts;
    std::vector<uint32_t> objs_left = sizes;
    for (uint32_t g : run_order) {
        uint32_t len = objs_left[g] / runs_left[g];
        if (objs_left[g] % runs_left[g] != 0) len++;
        objs_left[g] -= len;
        runs_left[g]--;
        order.insert(order.end(), len, g);
    }
    return order;
}

std::vector<TraceEvent> generate(const GenConfig& config) {
    config.validate();
    const std::vector<uint32_t> sizes = config.effective_group_sizes();
    const uint32_t n_groups = static_cast<uint32_t>(sizes.size());
    const uint32_t x = config.objects_per_context;
    const uint32_t m = config.reads_per_object;

    Rng rng(Rng::mix(config.seed, 0x67656eULL));
    std::vector<TraceEvent> events;
    uint64_t ts = 0;

    auto emit = [&](ThreadId tid, auto body) {
        TraceEvent ev;
        ev.tid = tid;
        ev.ts = ++ts;
        ev.body = std::move(body);
        events.push_back(std::move(ev));
    };

    // Frame table. Shapes: main -> work_loop_c -> {new_object_c, init_c, read sites}.
    FrameId next_frame = 1;
    auto declare_frame = [&](const std::string& method, const std::string& file, uint32_t line) {
        FrameTableEvent f;
        f.def = FrameDef{next_frame++, method, file, line};
        emit(0, std::move(f));
        return f.def.frame_id;
    };

    const FrameId f_main = declare_frame("main", "app.x", 1);
    const uint32_t read_sites = std::min<uint32_t>(m, 4);

    struct ContextFrames {
        FrameId loop;
        FrameId alloc;
        FrameId init;
        std::vector<FrameId> reads;
    };
    std::vector<ContextFrames> ctx_frames(config.contexts);
    for (uint32_t c = 0; c < config.contexts; ++c) {
        ContextFrames& cf = ctx_frames[c];
        cf.loop = declare_frame("work_loop_" + std::to_string(c), "app.x", 10 + c);
        cf.alloc = declare_frame("new_object_" + std::to_string(c), "app.x", 100 + c);
        cf.init = declare_frame("init_object_" + std::to_string(c), "app.x", 200 + c);
        for (uint32_t j = 0; j < read_sites; ++j)
            cf.reads.push_back(declare_frame(
                "read_field_" + std::to_string(c) + "_" + std::to_string(j), "app.x",
                300 + c * 16 + j));
    }

    // Group value vectors. Position 0 always separates groups, so groups can
    // never collide end to end.
    ObjectId next_obj = 1;
    for (uint32_t c = 0; c < config.contexts; ++c) {
        const ThreadId tid = static_cast<ThreadId>(1 + c % config.threads);
        const ContextFrames& cf = ctx_frames[c];
        const std::vector<FrameId> alloc_path = {f_main, cf.loop, cf.alloc};
        const std::vector<FrameId> init_path = {f_main, cf.loop, cf.init};

        std::vector<std::vector<uint64_t>> values(n_groups, std::vector<uint64_t>(m));
        std::vector<uint64_t> common(m);
        for (uint32_t k = 0; k < m; ++k) common[k] = rng.next_u64();
        // Same salt for every group in the context: group values still differ
        // pairwise (the tag encodes the group), but bytes depend on the seed.
        const uint64_t ctx_salt = rng.next_u64();

        double share_prob = 0.0;
        if (config.alphabet == GenConfig::Alphabet::Correlated && m > 1) {
            // Two independent draws must both pick the shared value for a
            // cross-group position to collide, hence the square root.
            share_prob = std::sqrt(std::min(1.0, config.correlation * m / (m - 1.0)));
        }

        for (uint32_t g = 0; g < n_groups; ++g) {
            for (uint32_t k = 0; k < m; ++k) {
                const uint64_t unique =
                    ((uint64_t{0x40000000} << 32) | (uint64_t{c} << 40) | (uint64_t{g} << 20) | k) +
                    ctx_salt;
                switch (config.alphabet) {
                    case GenConfig::Alphabet::Distinct:
                        values[g][k] = unique;
                        break;
                    case GenConfig::Alphabet::Correlated:
                        values[g][k] = (k > 0 && rng.u01() < share_prob) ? common[k] : unique;
                        break;
                    case GenConfig::Alphabet::NearDuplicate:
                        values[g][k] = k < config.distinct_words ? unique : common[k];
                        break;
                }
            }
        }

        const std::vector<uint32_t> order = plan_allocation_order(sizes);
        const uint64_t arena = (uint64_t{1} << 32) + uint64_t{c} * (uint64_t{1} << 24);

        for (uint32_t i = 0; i < x; ++i) {
            const uint32_t g = order[i];
            const ObjectId obj = next_obj++;
            const uint64_t base =
                config.free_objects ? arena : arena + uint64_t{i} * config.object_size;

            emit(tid, AllocEvent{obj, base, config.object_size, alloc_path});
            if (config.emit_ground_truth)
                emit(tid, GroundTruthEvent{
                              obj, "c" + std::to_string(c) + ".g" + std::to_string(g)});

            for (uint32_t w = 0; w < config.writes_per_object; ++w) {
                AccessEvent st;
                st.op = AccessOp::Store;
                st.addr = base + uint64_t{w} * 8;
                st.width = 8;
                st.value = w < m ? values[g][w] : 0;
                st.access_ctx = init_path;
                emit(tid, std::move(st));
            }

            for (uint32_t k = 0; k < m; ++k) {
                AccessEvent ld;
                ld.op = AccessOp::Load;
                ld.addr = base + uint64_t{k} * 8;
                ld.width = 8;
                ld.value = values[g][k];
                ld.access_ctx = {f_main, cf.loop, cf.reads[k % read_sites]};
                emit(tid, std::move(ld));
            }

            if (config.free_objects) emit(tid, FreeEvent{obj});
        }
    }
    return events;
}

}  // namespace repscope
