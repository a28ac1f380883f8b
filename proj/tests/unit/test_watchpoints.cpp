/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include "repscope/watchpoints.hpp"

using namespace repscope;

namespace {

WatchpointSlot slot_for(ObjectId obj, uint64_t offset, uint64_t expected = 0,
                        ContextId origin = 1) {
    WatchpointSlot s;
    s.target_obj_id = obj;
    s.target_offset = offset;
    s.width = 8;
    s.expected_value = expected;
    s.origin_access_ctx_id = origin;
    s.origin_alloc_ctx_id = 9;
    return s;
}

}  // namespace

TEST_CASE("four requests fill an empty unit") {
    WatchpointUnit unit(4, 1);
    for (int i = 0; i < 4; ++i) {
        ArmDecision d = unit.request_arm(slot_for(i + 1, 0));
        CHECK(d.outcome == ArmOutcome::ArmedNewSlot);
    }
    CHECK(unit.armed_count() == 4);
}

TEST_CASE("fifth request replaces with probability W/t") {
    int replaced = 0;
    constexpr int kTrials = 100000;
    for (int trial = 0; trial < kTrials; ++trial) {
        WatchpointUnit unit(4, 1000 + trial);
        for (int i = 0; i < 4; ++i) unit.request_arm(slot_for(i + 1, 0));
        ArmDecision d = unit.request_arm(slot_for(5, 0));
        CHECK(unit.armed_count() == 4);
        if (d.outcome == ArmOutcome::ReplacedSlot) {
            REQUIRE(d.evicted.has_value());
            replaced++;
        } else {
            CHECK(d.outcome == ArmOutcome::Rejected);
        }
    }
    const double rate = static_cast<double>(replaced) / kTrials;
    CHECK(rate > 0.8 - 0.02);
    CHECK(rate < 0.8 + 0.02);
}

TEST_CASE("never more than W slots armed") {
    WatchpointUnit unit(4, 7);
    for (int i = 0; i < 1000; ++i) {
        unit.request_arm(slot_for(i, i % 64));
        REQUIRE(unit.armed_count() <= 4);
    }
}

TEST_CASE("capacity zero means unlimited") {
    WatchpointUnit unit(0, 7);
    for (int i = 0; i < 100; ++i)
        CHECK(unit.request_arm(slot_for(i, 0)).outcome == ArmOutcome::ArmedNewSlot);
    CHECK(unit.armed_count() == 100);
}

TEST_CASE("traps are single use") {
    WatchpointUnit unit(4, 1);
    unit.request_arm(slot_for(7, 8, 42, 3));

    auto trap = unit.check_trap(7, 8, 8, AccessOp::Load, 42, 3);
    REQUIRE(trap.has_value());
    CHECK(trap->slot.expected_value == 42);
    CHECK(trap->observed_value == 42);
    CHECK(unit.armed_count() == 0);

    CHECK_FALSE(unit.check_trap(7, 8, 8, AccessOp::Load, 42, 3).has_value());
}

TEST_CASE("traps need byte-range overlap on the same object") {
    WatchpointUnit unit(4, 1);
    unit.request_arm(slot_for(7, 8));
    CHECK_FALSE(unit.check_trap(7, 16, 8, AccessOp::Load, 0, 1).has_value());
    CHECK_FALSE(unit.check_trap(8, 8, 8, AccessOp::Load, 0, 1).has_value());
    CHECK_FALSE(unit.check_trap(7, 0, 8, AccessOp::Load, 0, 1).has_value());  // [0,8) vs [8,16)
    // one-byte overlap at the tail
    CHECK(unit.check_trap(7, 15, 1, AccessOp::Store, 0, 1).has_value());
}

TEST_CASE("observed value is the access value") {
    WatchpointUnit unit(4, 1);
    unit.request_arm(slot_for(7, 8, 42));
    auto trap = unit.check_trap(7, 8, 8, AccessOp::Load, 41, 1);
    REQUIRE(trap.has_value());
    CHECK(trap->observed_value == 41);
    CHECK(trap->slot.expected_value == 42);
}

TEST_CASE("earliest armed matching slot wins") {
    WatchpointUnit unit(4, 1);
    unit.request_arm(slot_for(7, 8, 1));
    unit.request_arm(slot_for(7, 8, 2));
    auto trap = unit.check_trap(7, 8, 8, AccessOp::Load, 0, 1);
    REQUIRE(trap.has_value());
    CHECK(trap->slot.expected_value == 1);
    CHECK(unit.armed_count() == 1);
}

TEST_CASE("disarm_for_object") {
    WatchpointUnit unit(4, 1);
    CHECK(unit.disarm_for_object(7) == 0);
    unit.request_arm(slot_for(7, 0));
    unit.request_arm(slot_for(7, 8));
    unit.request_arm(slot_for(8, 0));
    CHECK(unit.disarm_for_object(7) == 2);
    CHECK(unit.disarm_for_object(7) == 0);  // idempotent
    CHECK(unit.armed_count() == 1);

    // freed slots become available again
    WatchpointUnit full(2, 1);
    full.request_arm(slot_for(1, 0));
    full.request_arm(slot_for(2, 0));
    full.disarm_for_object(1);
    CHECK(full.request_arm(slot_for(3, 0)).outcome == ArmOutcome::ArmedNewSlot);
}
