/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include "repscope/rng.hpp"
#include "repscope/trace.hpp"
#include "repscope/workload.hpp"

using namespace repscope;

TEST_CASE("parse_event decodes alloc records") {
    TraceEvent ev = parse_event(
        R"({"k":"alloc","tid":1,"ts":5,"obj":7,"addr":4096,"size":64,"ctx":[1,2]})");
    REQUIRE(ev.is_alloc());
    CHECK(ev.tid == 1);
    CHECK(ev.ts == 5);
    CHECK(ev.alloc().obj_id == 7);
    CHECK(ev.alloc().base_addr == 4096);
    CHECK(ev.alloc().size == 64);
    CHECK(ev.alloc().alloc_ctx == std::vector<FrameId>{1, 2});
}

TEST_CASE("parse_event decodes access records") {
    TraceEvent ev = parse_event(
        R"({"k":"acc","tid":1,"ts":6,"op":"ld","addr":4104,"w":8,"val":42,"ctx":[1,3]})");
    REQUIRE(ev.is_access());
    CHECK(ev.access().op == AccessOp::Load);
    CHECK(ev.access().addr == 4104);
    CHECK(ev.access().width == 8);
    CHECK(ev.access().value == 42);
    CHECK(ev.access().access_ctx == std::vector<FrameId>{1, 3});
}

TEST_CASE("parse_event rejects bad records") {
    CHECK_THROWS_AS(parse_event(R"({"k":"alloc","tid":1,"ts":1,"obj":1,"addr":0,"size":-1,"ctx":[1]})"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_event(R"({"k":"wat","tid":1,"ts":1})"), MalformedRecord);
    CHECK_THROWS_AS(parse_event("not json"), MalformedRecord);
    CHECK_THROWS_AS(parse_event(R"({"k":"acc","tid":1,"ts":1,"op":"ld","addr":0,"w":3,"val":0,"ctx":[1]})"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_event(R"({"k":"acc","tid":1,"ts":1,"op":"mv","addr":0,"w":8,"val":0,"ctx":[1]})"),
                    MalformedRecord);
}

TEST_CASE("write_event emits the documented free form") {
    TraceEvent ev;
    ev.tid = 3;
    ev.ts = 9;
    ev.body = FreeEvent{7};
    CHECK(write_event(ev) == R"({"k":"free","tid":3,"ts":9,"obj":7})");
}

TEST_CASE("write_event rejects invariant violations") {
    TraceEvent ev;
    ev.tid = 1;
    ev.ts = 1;
    ev.body = AllocEvent{1, 0, 0, {1}};  // zero size
    CHECK_THROWS_AS(write_event(ev), InvariantViolation);

    AccessEvent acc;
    acc.width = 3;
    acc.access_ctx = {1};
    ev.body = acc;
    CHECK_THROWS_AS(write_event(ev), InvariantViolation);
}

TEST_CASE("round trip preserves extreme values") {
    TraceEvent ev;
    ev.tid = 1;
    ev.ts = 2;
    AccessEvent a;
    a.op = AccessOp::Store;
    a.addr = UINT64_MAX - 8;
    a.width = 8;
    a.value = UINT64_MAX;
    a.access_ctx = {1};
    ev.body = a;
    CHECK(parse_event(write_event(ev)) == ev);
}

TEST_CASE("round trip holds for random events") {
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        TraceEvent ev;
        ev.tid = static_cast<ThreadId>(rng.bounded(8));
        ev.ts = rng.next_u64() >> 1;
        switch (rng.bounded(5)) {
            case 0: {
                AllocEvent a;
                a.obj_id = rng.next_u64();
                a.base_addr = rng.next_u64();
                a.size = 1 + rng.bounded(1 << 20);
                a.alloc_ctx = {static_cast<FrameId>(1 + rng.bounded(50)),
                               static_cast<FrameId>(1 + rng.bounded(50))};
                ev.body = a;
                break;
            }
            case 1:
                ev.body = FreeEvent{rng.next_u64()};
                break;
            case 2: {
                AccessEvent a;
                a.op = rng.bounded(2) ? AccessOp::Load : AccessOp::Store;
                a.addr = rng.next_u64();
                a.width = static_cast<uint32_t>(1u << rng.bounded(4));
                a.value = rng.next_u64();
                a.access_ctx = {static_cast<FrameId>(1 + rng.bounded(50))};
                ev.body = a;
                break;
            }
            case 3: {
                FrameTableEvent f;
                f.def = FrameDef{static_cast<FrameId>(rng.bounded(1000)), "m", "f.x",
                                 static_cast<uint32_t>(rng.bounded(10000))};
                ev.body = f;
                break;
            }
            default:
                ev.body = GroundTruthEvent{rng.next_u64(), "g" + std::to_string(rng.bounded(9))};
        }
        CAPTURE(write_event(ev));
        CHECK(parse_event(write_event(ev)) == ev);
    }
}

TEST_CASE("validate_trace on the empty stream") {
    TraceStats stats = validate_trace({});
    CHECK(stats == TraceStats{});
}

TEST_CASE("validate_trace flags overlapping live allocations") {
    std::vector<TraceEvent> events;
    TraceEvent f;
    f.tid = 0;
    f.ts = 1;
    f.body = FrameTableEvent{FrameDef{1, "m", "f.x", 1}};
    events.push_back(f);

    TraceEvent a1;
    a1.tid = 1;
    a1.ts = 1;
    a1.body = AllocEvent{1, 1000, 64, {1}};
    events.push_back(a1);

    TraceEvent a2;
    a2.tid = 1;
    a2.ts = 2;
    a2.body = AllocEvent{2, 1032, 64, {1}};  // intersects [1000, 1064)
    events.push_back(a2);

    TraceStats stats = validate_trace(events);
    CHECK(stats.malformed_count == 1);
    CHECK(stats.overlap_count == 1);
    CHECK(stats.alloc_count == 1);
    CHECK(stats.event_count ==
          stats.alloc_count + stats.free_count + stats.access_count + stats.frame_count +
              stats.gt_count + stats.malformed_count);
}

TEST_CASE("validate_trace counts generator output") {
    GenConfig config;
    config.contexts = 2;
    config.objects_per_context = 12;
    config.group_sizes = {8, 4};
    config.reads_per_object = 4;
    config.seed = 5;
    std::vector<TraceEvent> events = generate(config);

    TraceStats stats = validate_trace(events);
    CHECK(stats.malformed_count == 0);
    CHECK(stats.alloc_count == 24);  // contexts * X
    CHECK(stats.access_count ==
          uint64_t{24} * (config.reads_per_object + config.writes_per_object));
    CHECK(stats.thread_count == 1);
    CHECK(stats.outside_access_count == 0);
    CHECK(stats.event_count ==
          stats.alloc_count + stats.free_count + stats.access_count + stats.frame_count +
              stats.gt_count + stats.malformed_count);
}

TEST_CASE("validate_trace is whitespace independent") {
    std::vector<TraceEvent> compact;
    compact.push_back(parse_event(R"({"k":"frame","id":1,"m":"m","f":"f.x","l":1})"));
    compact.push_back(parse_event(R"({"k":"alloc","tid":1,"ts":1,"obj":1,"addr":0,"size":8,"ctx":[1]})"));
    std::vector<TraceEvent> spaced;
    spaced.push_back(parse_event(R"({ "k" : "frame" , "id" : 1 , "m" : "m", "f": "f.x", "l": 1 })"));
    spaced.push_back(parse_event(
        R"({  "k":"alloc"  ,"tid": 1,  "ts":1, "obj": 1, "addr" : 0, "size": 8, "ctx" : [ 1 ] })"));
    CHECK(validate_trace(compact) == validate_trace(spaced));
}

TEST_CASE("validate_trace flags reuse and ordering problems") {
    std::vector<TraceEvent> events;
    TraceEvent f;
    f.tid = 0;
    f.ts = 1;
    f.body = FrameTableEvent{FrameDef{1, "m", "f.x", 1}};
    events.push_back(f);

    TraceEvent a1;
    a1.tid = 1;
    a1.ts = 5;
    a1.body = AllocEvent{1, 1000, 64, {1}};
    events.push_back(a1);

    TraceEvent a2 = a1;  // same obj id while live, same ts (order violation too)
    a2.ts = 5;
    a2.body = AllocEvent{1, 2000, 64, {1}};
    events.push_back(a2);

    TraceEvent fr;
    fr.tid = 1;
    fr.ts = 6;
    fr.body = FreeEvent{99};
    events.push_back(fr);

    TraceStats stats = validate_trace(events);
    CHECK(stats.order_violation_count == 1);
    CHECK(stats.unknown_free_count == 1);
    CHECK(stats.malformed_count == 2);
}
