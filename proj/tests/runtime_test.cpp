// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/demo.hpp"
#include "fnkit/pipeline.hpp"
#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"
#include "fnkit/runtime/scheduler.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace fnkit {
namespace {

using nlohmann::json;

struct Rig {
    explicit Rig(ClockMode mode = ClockMode::kVirtual) : clock(mode) {}
    void add(const AdapterManifest& m) {
        for (const auto& s : m.subscriptions) bus.register_event(s.source_path, s.datatype);
        for (const auto& p : m.publications) bus.register_event(p.source_path, p.datatype);
    }
    SimClock clock;
    RunTrace trace;
    Bus bus{clock, trace};
};

Datatype number(double lo = -1000, double hi = 1000, double def = 0) {
    return NumericalDatatype{NumericBase::kFloat64, lo, hi, "", def};
}

ErrorSpec error(const std::string& name, double maturation = 0, double reset = 0) {
    return ErrorSpec{name, BooleanDatatype{}, maturation, "Low", reset, "-", "-", {}};
}

std::vector<std::string> step_order(const RunTrace& trace) {
    std::vector<std::string> out;
    for (const auto& r : trace.records()) {
        if (r.kind == "step_begin") out.push_back(r.node);
    }
    return out;
}

void start(LifecycleNode& node) {
    node.trigger(LifecycleState::kConfiguring);
    node.trigger(LifecycleState::kActivating);
}

TEST(Value, Float32IsRoundedToSinglePrecision) {
    const Datatype d = NumericalDatatype{NumericBase::kFloat32, -10, 10, "", 0};
    EXPECT_EQ(coerce_value(d, 0.1, {}).get<double>(), static_cast<double>(0.1F));
    EXPECT_NE(coerce_value(d, 0.1, {}).get<double>(), 0.1);
}

TEST(Value, IntegralBasesRejectFractionsAndOverflow) {
    const Datatype u8 = NumericalDatatype{NumericBase::kUint8, 0, 10, "", 0};
    EXPECT_EQ(coerce_value(u8, 7, {}), json(7));
    EXPECT_EQ(coerce_value(u8, 3.0, {}), json(3));
    EXPECT_THROW(coerce_value(u8, 2.5, {}), Error);
    EXPECT_THROW(coerce_value(u8, 300, {}), Error);
    EXPECT_THROW(coerce_value(u8, -1, {}), Error);
    EXPECT_THROW(coerce_value(u8, "7", {}), Error);
}

TEST(Value, RangeCheckIsSeparateFromRepresentability) {
    const Datatype u8 = NumericalDatatype{NumericBase::kUint8, 0, 10, "", 0};
    EXPECT_NO_THROW(coerce_value(u8, 200, {}));
    EXPECT_FALSE(in_range(u8, 200, {}));
    EXPECT_TRUE(in_range(u8, 10, {}));
}

TEST(Value, StructsArraysAndEnumerations) {
    const Datatype point = StructDatatype{"Point", {StructField{"X", number()}, StructField{"Y", number()}}};
    EXPECT_EQ(coerce_value(point, {{"Y", 1}, {"X", 2}}, {}), (json{{"X", 2.0}, {"Y", 1.0}}));
    EXPECT_THROW(coerce_value(point, {{"X", 2}}, {}), Error);
    EXPECT_THROW(coerce_value(point, {{"X", 2}, {"Y", 1}, {"Z", 0}}, {}), Error);
    const Datatype arr = ArrayDatatype{"Triple", number(), 3};
    EXPECT_NO_THROW(coerce_value(arr, json::array({1, 2, 3}), {}));
    EXPECT_THROW(coerce_value(arr, json::array({1, 2}), {}), Error);
    const Datatype mode = EnumerationDatatype{"Mode", {{"Off", 0}, {"On", 1}}};
    EXPECT_EQ(coerce_value(mode, 1, {}), json(1));
    EXPECT_THROW(coerce_value(mode, 2, {}), Error);
    const TypeTable types = make_type_table({point});
    EXPECT_EQ(default_value(TypeReference{"Point"}, types), (json{{"X", 0.0}, {"Y", 0.0}}));
    EXPECT_THROW(default_value(TypeReference{"Missing"}, types), Error);
}

TEST(Clock, VirtualTimeOnlyMovesForward) {
    SimClock clock;
    EXPECT_EQ(clock.now_us(), 0);
    clock.advance_to(5000);
    clock.advance_to(1000);
    EXPECT_EQ(clock.now_us(), 5000);
    clock.reset();
    EXPECT_EQ(clock.now_us(), 0);
    EXPECT_EQ(parse_clock_mode("wall"), ClockMode::kWall);
    EXPECT_FALSE(parse_clock_mode("sundial"));
}

TEST(Clock, WallAdvanceSleeps) {
    SimClock clock(ClockMode::kWall);
    clock.advance_to(20000);
    EXPECT_GE(clock.now_us(), 20000);
}

TEST(Bus, PublishRetainsLatestWithSequence) {
    Rig rig;
    rig.bus.register_event("A.B", number());
    EXPECT_FALSE(rig.bus.retained("A.B"));
    EXPECT_EQ(rig.bus.sequence("A.B"), 0U);
    rig.clock.advance_to(100);
    EXPECT_EQ(rig.bus.publish("A.B", 1.5), 1U);
    rig.clock.advance_to(200);
    EXPECT_EQ(rig.bus.publish("A.B", 2.5), 2U);
    const auto r = rig.bus.retained("A.B");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, json(2.5));
    EXPECT_EQ(r->t_us, 200);
    EXPECT_EQ(r->sequence, 2U);
    EXPECT_EQ(rig.trace.count("publish"), 2U);
}

TEST(Bus, RejectedValueLeavesTopicUntouched) {
    Rig rig;
    rig.bus.register_event("A.B", BooleanDatatype{});
    rig.bus.publish("A.B", true);
    try {
        rig.bus.publish("A.B", 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kTypeMismatch);
    }
    EXPECT_EQ(rig.bus.retained("A.B")->value, json(true));
    EXPECT_EQ(rig.bus.sequence("A.B"), 1U);
    EXPECT_EQ(rig.trace.count("publish"), 1U);
}

TEST(Bus, UnknownEventAndConflictingRegistration) {
    Rig rig;
    rig.bus.register_event("A.B", number());
    EXPECT_NO_THROW(rig.bus.register_event("A.B", number()));
    try {
        rig.bus.register_event("A.B", BooleanDatatype{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kConflict);
    }
    try {
        rig.bus.publish("A.C", 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnknownEvent);
    }
}

TEST(Bus, FanOutInSubscriptionOrder) {
    Rig rig;
    rig.bus.register_event("A.B", number());
    std::vector<std::string> seen;
    const auto first = rig.bus.subscribe("A.B", [&](const std::string&, const Retained& r) {
        seen.push_back("1:" + r.value.dump());
    });
    rig.bus.subscribe("A.B", [&](const std::string&, const Retained& r) { seen.push_back("2:" + r.value.dump()); });
    rig.bus.publish("A.B", 4);
    rig.bus.unsubscribe(first);
    rig.bus.publish("A.B", 5);
    EXPECT_EQ(seen, (std::vector<std::string>{"1:4.0", "2:4.0", "2:5.0"}));
}

TEST(Node, RejectsUnregisteredOrMistypedEvents) {
    Rig rig;
    const auto m = test::simple_manifest("N", 50, 0, {"In.X"});
    try {
        LifecycleNode node(m, std::make_shared<test::ProbeFunction>(), rig.bus);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnknownEvent);
    }
    rig.bus.register_event("In.X", BooleanDatatype{});
    try {
        LifecycleNode node(m, std::make_shared<test::ProbeFunction>(), rig.bus);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kTypeMismatch);
    }
}

TEST(Node, StepSeesLatestValueOnly) {
    Rig rig;
    const auto m = test::simple_manifest("N", 50, 0, {"In.X"}, {"Out.Y"});
    rig.add(m);
    auto fn = std::make_shared<test::ProbeFunction>();
    fn->outputs["Out.Y"] = 0;
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    rig.bus.publish("In.X", 1);
    rig.bus.publish("In.X", 2);
    rig.bus.publish("In.X", 3);
    node.tick(0);
    ASSERT_EQ(fn->input_history.size(), 1U);
    EXPECT_EQ(fn->input_history[0].at("In.X"), json(3.0));
    node.tick(50000);
    EXPECT_EQ(fn->input_history[1].at("In.X"), json(3.0));
}

TEST(Node, OutputsArePublishedAfterStep) {
    Rig rig;
    const auto m = test::simple_manifest("N", 50, 0, {}, {"Out.Y"});
    rig.add(m);
    auto fn = std::make_shared<test::ProbeFunction>();
    fn->on_step = [](test::ProbeFunction& f) { f.outputs["Out.Y"] = f.steps * 10; };
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    node.tick(0);
    node.tick(50000);
    EXPECT_EQ(rig.bus.retained("Out.Y")->value, json(20.0));
    EXPECT_EQ(rig.bus.sequence("Out.Y"), 2U);
    std::vector<std::string> kinds;
    for (const auto& r : rig.trace.records()) {
        if (r.kind != "transition") kinds.push_back(r.kind);
    }
    const std::vector<std::string> tick = {"adapter_in_begin", "adapter_in_end", "step_begin", "step_end",
                                           "adapter_out_begin", "publish", "adapter_out_end"};
    ASSERT_EQ(kinds.size(), 2 * tick.size());
    EXPECT_TRUE(std::equal(tick.begin(), tick.end(), kinds.begin()));
}

TEST(Node, MissingOutputFailsTheStep) {
    Rig rig;
    const auto m = test::simple_manifest("N", 50, 0, {}, {"Out.Y"});
    rig.add(m);
    LifecycleNode node(m, std::make_shared<test::ProbeFunction>(), rig.bus);
    start(node);
    node.tick(0);
    EXPECT_EQ(node.state(), LifecycleState::kUnconfigured);
    const auto& last = rig.trace.records().back();
    EXPECT_EQ(last.kind, "transition");
    EXPECT_EQ(last.payload["transition"], "ErrorProcessing");
}

TEST(RangePolicy, DefaultAndInitSubstitution) {
    Rig rig;
    auto m = test::simple_manifest("N", 50, 0, {"In.D", "In.I", "In.Raw"});
    for (auto& s : m.subscriptions) s.datatype = number(-10, 10, 1.25);
    m.subscriptions[0].range_error_action = RangeErrorAction::kDefault;
    m.subscriptions[1].range_error_action = RangeErrorAction::kInit;
    m.errors = {error("NFn_RangeError_ErrorSts")};
    rig.add(m);
    rig.bus.publish("In.I", 7.0);  // captured at init
    auto fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    rig.bus.publish("In.D", 99.0);
    rig.bus.publish("In.I", 99.0);
    rig.bus.publish("In.Raw", 99.0);
    node.tick(0);
    EXPECT_EQ(fn->inputs.at("In.D"), json(1.25));
    EXPECT_EQ(fn->inputs.at("In.I"), json(7.0));
    EXPECT_EQ(fn->inputs.at("In.Raw"), json(99.0));
    EXPECT_EQ(node.errors().status("NFn_RangeError_ErrorSts"), ErrorStatus::kSet);
    rig.bus.publish("In.D", 2.0);
    rig.bus.publish("In.I", 3.0);
    rig.bus.publish("In.Raw", 4.0);
    node.tick(50000);
    EXPECT_EQ(fn->inputs.at("In.D"), json(2.0));
    EXPECT_EQ(fn->inputs.at("In.I"), json(3.0));
    EXPECT_EQ(node.errors().status("NFn_RangeError_ErrorSts"), ErrorStatus::kClear);
}

TEST(Timeout, SilentInputRaisesTimeoutError) {
    Rig rig;
    auto m = test::simple_manifest("N", 50, 0, {"In.X"});
    m.subscriptions[0].timeout_value = 100;
    m.subscriptions[0].timeout_error = "NFn_Timeout_ErrorSts";
    m.errors = {error("NFn_Timeout_ErrorSts")};
    rig.add(m);
    LifecycleNode node(m, std::make_shared<test::ProbeFunction>(), rig.bus);
    start(node);
    std::vector<bool> set;
    for (std::int64_t t = 0; t <= 300000; t += 50000) {
        rig.clock.advance_to(t);
        if (t == 200000) rig.bus.publish("In.X", 1);
        node.tick(t);
        set.push_back(node.errors().status("NFn_Timeout_ErrorSts") == ErrorStatus::kSet);
    }
    // silent for > 100 ms at 150 ms; fresh at 200..300 ms
    EXPECT_EQ(set, (std::vector<bool>{false, false, false, true, false, false, false}));
}

TEST(Scheduler, FiftyMsNodeStepsTenTimesInHalfASecond) {
    Rig rig;
    const auto m = test::simple_manifest("Fast", 50, 0);
    auto fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    run_scheduler({&node}, rig.bus, 500000);
    EXPECT_EQ(fn->steps, 10);
    EXPECT_EQ(rig.clock.now_us(), 500000);
}

TEST(Scheduler, TwoRatesOverFiveSecondsWithPriorityOrder) {
    Rig rig;
    auto fast_fn = std::make_shared<test::ProbeFunction>();
    auto slow_fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode fast(test::simple_manifest("Fast", 50, 2), fast_fn, rig.bus);
    LifecycleNode slow(test::simple_manifest("Slow", 500, 1), slow_fn, rig.bus);
    start(fast);
    start(slow);
    run_scheduler({&fast, &slow}, rig.bus, 5000000);
    EXPECT_EQ(fast_fn->steps, 100);
    EXPECT_EQ(slow_fn->steps, 10);
    // oracle: every 500 ms instant holds Slow then Fast; other instants Fast only
    std::vector<std::string> expected;
    for (int k = 0; k < 100; ++k) {
        if (k % 10 == 0) expected.push_back("Slow");
        expected.push_back("Fast");
    }
    EXPECT_EQ(step_order(rig.trace), expected);
}

TEST(Scheduler, EqualPriorityBreaksTiesByName) {
    Rig rig;
    LifecycleNode b(test::simple_manifest("Beta", 100, 0), std::make_shared<test::ProbeFunction>(), rig.bus);
    LifecycleNode a(test::simple_manifest("Alpha", 100, 0), std::make_shared<test::ProbeFunction>(), rig.bus);
    start(b);
    start(a);
    run_scheduler({&b, &a}, rig.bus, 200000);
    EXPECT_EQ(step_order(rig.trace), (std::vector<std::string>{"Alpha", "Beta", "Alpha", "Beta"}));
}

TEST(Scheduler, InitialOffsetShiftsTicks) {
    Rig rig;
    auto m = test::simple_manifest("Late", 100, 0);
    m.initial_offset = 30;
    LifecycleNode node(m, std::make_shared<test::ProbeFunction>(), rig.bus);
    start(node);
    run_scheduler({&node}, rig.bus, 300000);
    std::vector<std::int64_t> times;
    for (const auto& r : rig.trace.records()) {
        if (r.kind == "step_begin") times.push_back(r.t_us);
    }
    EXPECT_EQ(times, (std::vector<std::int64_t>{30000, 130000, 230000}));
}

TEST(Scheduler, InactiveNodeNeverSteps) {
    Rig rig;
    auto fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode node(test::simple_manifest("Idle", 50, 0), fn, rig.bus);
    node.trigger(LifecycleState::kConfiguring);
    const auto result = run_scheduler({&node}, rig.bus, 1000000);
    EXPECT_EQ(fn->steps, 0);
    EXPECT_EQ(result.ticks, 0U);
    EXPECT_EQ(rig.trace.count("step_begin"), 0U);
}

TEST(Scheduler, StimuliPrecedeTicksAtTheSameInstant) {
    Rig rig;
    const auto m = test::simple_manifest("N", 50, 0, {"In.X"});
    rig.add(m);
    auto fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    SignalTrace stimuli;
    stimuli.records = {{0.0, "In.X", 1}, {50.0, "In.X", 2}, {75.0, "In.X", 3}};
    const auto result = run_scheduler({&node}, rig.bus, 150000, &stimuli);
    EXPECT_EQ(result.publications, 3U);
    ASSERT_EQ(fn->input_history.size(), 3U);
    EXPECT_EQ(fn->input_history[0].at("In.X"), json(1.0));
    EXPECT_EQ(fn->input_history[1].at("In.X"), json(2.0));
    EXPECT_EQ(fn->input_history[2].at("In.X"), json(3.0));
}

TEST(Scheduler, DebounceSkipsTicksTooCloseToLastStep) {
    Rig rig;
    auto m = test::simple_manifest("N", 50, 0);
    m.debounce_time = 60;
    auto fn = std::make_shared<test::ProbeFunction>();
    LifecycleNode node(m, fn, rig.bus);
    start(node);
    run_scheduler({&node}, rig.bus, 500000);
    EXPECT_EQ(fn->steps, 5);
    EXPECT_EQ(rig.trace.count("tick_skipped"), 5U);
}

TEST(Determinism, DemoVirtualRunsAreByteIdentical) {
    const auto manifests = test::demo_manifests();
    const auto stimuli = load_trace(demo_trace_jsonl());
    RunOptions options;
    options.duration_us = 10000000;
    const std::string a = run_application(manifests, stimuli, options).trace.to_jsonl();
    const std::string b = run_application(manifests, stimuli, options).trace.to_jsonl();
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.empty());
}

TEST(RunTrace, JsonLinesRoundTrip) {
    RunTrace trace;
    trace.add(0, "transition", "N", {{"from", "Unconfigured"}});
    trace.add(5, "publish", "N", {{"path", "A.B"}, {"value", 0.1}});
    const RunTrace back = RunTrace::from_jsonl(trace.to_jsonl());
    EXPECT_EQ(back, trace);
    EXPECT_EQ(back.count("publish", "N"), 1U);
    EXPECT_THROW(RunTrace::from_jsonl("{\"t_us\":0}\nnot json\n"), Error);
}

}  // namespace
}  // namespace fnkit
