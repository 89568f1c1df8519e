// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"
#include "fnkit/runtime/scheduler.hpp"
#include "fnkit/runtime/watchdog.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

namespace fnkit {
namespace {

ErrorSpec error(const std::string& name) { return ErrorSpec{name, BooleanDatatype{}, 0, "High", 0, "-", "-", {}}; }

WatchdogSpec deadline(double max_ms, const std::string& name) {
    WatchdogSpec w;
    w.supervision_type.deadline = true;
    w.deadline_limits = DeadlineLimits{0, max_ms, name};
    return w;
}

WatchdogSpec alive(std::uint64_t lo, std::uint64_t hi, double window_ms, const std::string& name) {
    WatchdogSpec w;
    w.supervision_type.alive = true;
    w.alive_limits = AliveLimits{lo, hi, window_ms, name};
    return w;
}

WatchdogSpec logical(std::vector<std::string> order, const std::string& name) {
    WatchdogSpec w;
    w.supervision_type.logical = true;
    w.logical_check = LogicalCheck{std::move(order), name};
    return w;
}

std::vector<TraceRecord> violations(const RunTrace& trace) {
    std::vector<TraceRecord> out;
    for (const auto& r : trace.records()) {
        if (r.kind == "watchdog_violation") out.push_back(r);
    }
    return out;
}

struct Supervised {
    RunTrace trace;
    std::unique_ptr<LifecycleNode> node;
};

Supervised run(AdapterManifest m, std::shared_ptr<test::ProbeFunction> fn, ClockMode mode, std::int64_t duration_us) {
    Supervised out;
    SimClock clock(mode);
    Bus bus(clock, out.trace);
    out.node = create_node(m, fn, bus);
    out.node->trigger(LifecycleState::kConfiguring);
    out.node->trigger(LifecycleState::kActivating);
    run_scheduler({out.node.get()}, bus, duration_us);
    out.node->trigger(LifecycleState::kShuttingDown);
    out.node.reset();
    return out;
}

TEST(Deadline, InjectedDelayGivesExactlyOneViolation) {
    auto m = test::simple_manifest("Core", 50, 0);
    m.watchdog = deadline(10, "CoreFn_Deadline_ErrorSts");
    m.errors = {error("CoreFn_Deadline_ErrorSts")};
    auto fn = std::make_shared<test::ProbeFunction>();
    fn->on_step = [](test::ProbeFunction& f) {
        if (f.steps == 3) std::this_thread::sleep_for(std::chrono::milliseconds(30));
    };
    const Supervised r = run(m, fn, ClockMode::kWall, 400000);
    const auto v = violations(r.trace);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].payload["check"], "deadline");
    EXPECT_EQ(v[0].payload["error"], "CoreFn_Deadline_ErrorSts");
    std::size_t set = 0;
    for (const auto& rec : r.trace.records()) {
        if (rec.kind == "error_change" && rec.payload["to"] == "Set") ++set;
    }
    EXPECT_EQ(set, 1U);
    // the offline pass over the same trace agrees
    const auto offline = supervise(m.watchdog, r.trace, "Core", {0, 1000000000});
    ASSERT_EQ(offline.size(), 1U);
    EXPECT_EQ(offline[0].error_name, "CoreFn_Deadline_ErrorSts");
}

TEST(Deadline, CheckHelperBounds) {
    const WatchdogSpec w = deadline(5, "E");
    EXPECT_FALSE(check_deadline(w, 5000, 0));
    EXPECT_TRUE(check_deadline(w, 5001, 0));
    EXPECT_FALSE(check_deadline(WatchdogSpec{}, 1000000, 0));
}

TEST(Alive, ShortfallGivesViolation) {
    auto m = test::simple_manifest("Slow", 200, 0);
    m.watchdog = alive(5, 10, 500, "SlowFn_Alive_ErrorSts");
    m.errors = {error("SlowFn_Alive_ErrorSts")};
    auto fn = std::make_shared<test::ProbeFunction>();
    const Supervised r = run(m, fn, ClockMode::kVirtual, 2000000);
    const auto v = violations(r.trace);
    // windows close at 0.5, 1.0, 1.5 and 2.0 s with 2 or 3 steps each
    ASSERT_EQ(v.size(), 4U);
    for (const auto& rec : v) {
        EXPECT_EQ(rec.payload["check"], "alive");
        EXPECT_EQ(rec.payload["error"], "SlowFn_Alive_ErrorSts");
    }
    bool set = false;
    for (const auto& rec : r.trace.records()) {
        set = set || (rec.kind == "error_change" && rec.payload["error"] == "SlowFn_Alive_ErrorSts" &&
                      rec.payload["to"] == "Set");
    }
    EXPECT_TRUE(set);
}

TEST(Alive, HealthyRateIsQuiet) {
    auto m = test::simple_manifest("Fast", 50, 0);
    m.watchdog = alive(8, 12, 500, "FastFn_Alive_ErrorSts");
    m.errors = {error("FastFn_Alive_ErrorSts")};
    const Supervised r = run(m, std::make_shared<test::ProbeFunction>(), ClockMode::kVirtual, 5000000);
    EXPECT_TRUE(violations(r.trace).empty());
    EXPECT_TRUE(supervise(m.watchdog, r.trace, "Fast", {0, 5000000}).empty());
}

TEST(Alive, OfflineWindowsCountSteps) {
    auto m = test::simple_manifest("Slow", 200, 0);
    m.watchdog = alive(5, 10, 500, "E");
    const Supervised r = run(m, std::make_shared<test::ProbeFunction>(), ClockMode::kVirtual, 2000000);
    const auto offline = supervise(m.watchdog, r.trace, "Slow", {0, 2000000});
    ASSERT_EQ(offline.size(), 4U);
    EXPECT_EQ(offline[0].detail, "3 indications, expected [5,10]");
    EXPECT_EQ(offline[1].detail, "2 indications, expected [5,10]");
}

TEST(Logical, WrongCheckpointOrderIsViolation) {
    auto m = test::simple_manifest("Eco", 500, 0);
    m.watchdog = logical({"A", "B"}, "EcoFn_Logical_ErrorSts");
    m.errors = {error("EcoFn_Logical_ErrorSts")};
    auto good = std::make_shared<test::ProbeFunction>();
    good->checkpoint_list = {"A", "B"};
    EXPECT_TRUE(violations(run(m, good, ClockMode::kVirtual, 2000000).trace).empty());
    auto bad = std::make_shared<test::ProbeFunction>();
    bad->checkpoint_list = {"B", "A"};
    const Supervised r = run(m, bad, ClockMode::kVirtual, 2000000);
    const auto v = violations(r.trace);
    ASSERT_EQ(v.size(), 4U);
    EXPECT_EQ(v[0].payload["check"], "logical");
    EXPECT_EQ(v[0].payload["error"], "EcoFn_Logical_ErrorSts");
    EXPECT_EQ(supervise(m.watchdog, r.trace, "Eco", {0, 2000000}).size(), 4U);
}

TEST(Supervision, NoneDisablesEveryCheck) {
    const WatchdogSpec none;
    EXPECT_FALSE(check_alive(none, 0, 0));
    EXPECT_FALSE(check_deadline(none, 1 << 30, 0));
    EXPECT_FALSE(check_logical(none, {"x"}, 0));
}

}  // namespace
}  // namespace fnkit
