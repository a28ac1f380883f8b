/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef REPSCOPE_TESTS_EXAMPLE1_HPP
#define REPSCOPE_TESTS_EXAMPLE1_HPP

#include <vector>

#include "repscope/trace.hpp"

namespace repscope::test {

// The canonical four-object loop trace: objects O1..O4 allocated at one
// site; O1 is read once at the first use site, O2 is never sampled, O3 is
// read at both use sites, O4 at the second one. The first-site values agree
// (42 == 42) and the second-site values differ (7 != 9), so exhaustive
// pairing yields exactly one equivalent and one different comparison.
inline std::vector<TraceEvent> example1_trace() {
    std::vector<TraceEvent> ev;
    uint64_t ts = 0;
    auto push = [&](auto body) {
        TraceEvent e;
        e.tid = 1;
        e.ts = ++ts;
        e.body = std::move(body);
        ev.push_back(std::move(e));
    };

    push(FrameTableEvent{FrameDef{1, "main", "loop.x", 1}});
    push(FrameTableEvent{FrameDef{2, "run_loop", "loop.x", 2}});
    push(FrameTableEvent{FrameDef{3, "alloc_o", "loop.x", 3}});
    push(FrameTableEvent{FrameDef{4, "use_first", "loop.x", 5}});
    push(FrameTableEvent{FrameDef{5, "use_second", "loop.x", 7}});

    const std::vector<FrameId> alloc_ctx = {1, 2, 3};
    const std::vector<FrameId> use1 = {1, 2, 4};
    const std::vector<FrameId> use2 = {1, 2, 5};
    constexpr uint64_t kOff1 = 8;
    constexpr uint64_t kOff2 = 16;

    auto load = [&](uint64_t addr, uint64_t value, const std::vector<FrameId>& ctx) {
        AccessEvent a;
        a.op = AccessOp::Load;
        a.addr = addr;
        a.width = 8;
        a.value = value;
        a.access_ctx = ctx;
        push(std::move(a));
    };

    push(AllocEvent{1, 0x1000, 64, alloc_ctx});
    load(0x1000 + kOff1, 42, use1);  // V1

    push(AllocEvent{2, 0x2000, 64, alloc_ctx});  // skipped: never read

    push(AllocEvent{3, 0x3000, 64, alloc_ctx});
    load(0x3000 + kOff1, 42, use1);  // V1' == V1: the equivalent pair
    load(0x3000 + kOff2, 7, use2);   // V2

    push(AllocEvent{4, 0x4000, 64, alloc_ctx});
    load(0x4000 + kOff2, 9, use2);  // V2' != V2
    load(0x4000 + kOff2, 9, use2);  // second use read: the different pair

    return ev;
}

inline const std::vector<FrameId>& example1_alloc_path() {
    static const std::vector<FrameId> path = {1, 2, 3};
    return path;
}

}  // namespace repscope::test

#endif
