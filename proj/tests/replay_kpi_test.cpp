// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/demo.hpp"
#include "fnkit/kpi.hpp"
#include "fnkit/pipeline.hpp"
#include "fnkit/replay.hpp"
#include "fnkit/runtime/bus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace fnkit {
namespace {

using nlohmann::json;

ErrorKind load_error(const std::string& text, const SignalTree* catalog = nullptr) {
    try {
        load_trace(text, catalog);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "trace loaded: " << text;
    return ErrorKind::kIo;
}

TEST(Trace, LoadsJsonLines) {
    const auto trace = load_trace("{\"t_ms\":0,\"path\":\"A.B\",\"value\":1}\n\n{\"t_ms\":12.5,\"path\":\"A.C\",\"value\":true}\n");
    ASSERT_EQ(trace.records.size(), 2U);
    EXPECT_EQ(trace.records[1], (SignalRecord{12.5, "A.C", true}));
    EXPECT_EQ(trace.end_us(), 12500);
    EXPECT_EQ(load_trace(trace.to_jsonl()), trace);
}

TEST(Trace, MalformedAndOutOfOrderLinesRejected) {
    EXPECT_EQ(load_error("{\"t_ms\":0,\"path\":\"A.B\"}\n"), ErrorKind::kJsonSyntax);
    EXPECT_EQ(load_error("nope\n"), ErrorKind::kJsonSyntax);
    EXPECT_EQ(load_error("{\"t_ms\":-1,\"path\":\"A.B\",\"value\":1}\n"), ErrorKind::kJsonSyntax);
    EXPECT_EQ(load_error("{\"t_ms\":0,\"path\":\"A\",\"value\":1}\n"), ErrorKind::kJsonSyntax);
    try {
        load_trace("{\"t_ms\":5,\"path\":\"A.B\",\"value\":1}\n{\"t_ms\":4,\"path\":\"A.B\",\"value\":1}\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(Trace, CatalogRejectsUnknownPath) {
    const SignalTree catalog = test::demo_catalog();
    EXPECT_EQ(load_error("{\"t_ms\":0,\"path\":\"Vehicle.Nope\",\"value\":1}\n", &catalog),
              ErrorKind::kUnresolvedReference);
    EXPECT_NO_THROW(load_trace(demo_trace_jsonl(), &catalog));
}

TEST(Trace, DemoFixtureEqualsBundledTrace) {
    EXPECT_EQ(test::read_text(test::source_dir() / "fixtures/demo/demo_trace.jsonl"), demo_trace_jsonl());
    const auto trace = load_trace(demo_trace_jsonl());
    EXPECT_GE(trace.end_us(), 59000000);
    EXPECT_LT(trace.end_us(), 60000000);
}

TEST(Replay, PublishesEveryRecordAtItsTime) {
    SimClock clock;
    RunTrace run;
    Bus bus(clock, run);
    bus.register_event("A.B", NumericalDatatype{NumericBase::kFloat64, -10, 10, "", 0});
    SignalTrace trace;
    for (int i = 0; i < 50; ++i) trace.records.push_back({i * 2.5, "A.B", i % 7});
    EXPECT_EQ(replay(trace, bus), 50U);
    ASSERT_EQ(run.count("publish", "replay"), 50U);
    for (std::size_t i = 0; i < 50; ++i) {
        EXPECT_EQ(run.records()[i].t_us, static_cast<std::int64_t>(i) * 2500);
        EXPECT_EQ(run.records()[i].payload["value"], json(static_cast<double>(i % 7)));
    }
}

TEST(Stats, MatchesSortOracle) {
    std::mt19937 rng(99);
    for (int n = 1; n <= 200; ++n) {
        std::vector<double> xs;
        for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(rng() % 1000));
        const Stats s = compute_stats(xs);
        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        // lower median: the element with (n-1)/2 elements below it
        EXPECT_EQ(s.median, sorted[(n - 1) / 2]);
        // nearest rank: smallest value with at least 95% of samples <= it
        double p95 = sorted.back();
        for (double v : sorted) {
            const auto at_or_below = std::count_if(sorted.begin(), sorted.end(), [&](double x) { return x <= v; });
            if (100 * at_or_below >= 95 * n) {
                p95 = v;
                break;
            }
        }
        EXPECT_EQ(s.p95, p95) << n;
        EXPECT_EQ(s.max, sorted.back());
        EXPECT_EQ(s.count, static_cast<std::size_t>(n));
    }
    EXPECT_EQ(compute_stats({}).count, 0U);
}

TEST(Stats, KnownValues) {
    const Stats s = compute_stats({5, 1, 4, 2, 3, 6});
    EXPECT_EQ(s.median, 3);
    EXPECT_EQ(s.p95, 6);
    std::vector<double> hundred;
    for (int i = 1; i <= 100; ++i) hundred.push_back(i);
    EXPECT_EQ(compute_stats(hundred).p95, 95);
}

RunTrace tick(std::int64_t t, std::int64_t in, std::int64_t logic, std::int64_t out, const std::string& node = "N") {
    RunTrace r;
    r.add(t, "adapter_in_begin", node);
    r.add(t + in, "adapter_in_end", node);
    r.add(t + in, "step_begin", node);
    r.add(t + in + logic, "step_end", node);
    r.add(t + in + logic, "adapter_out_begin", node);
    r.add(t + in + logic + out, "adapter_out_end", node);
    return r;
}

TEST(TickTimings, PhasesAddUp) {
    const auto timings = tick_timings(tick(1000, 30, 400, 70));
    ASSERT_EQ(timings.size(), 1U);
    EXPECT_EQ(timings[0].t_us, 1000);
    EXPECT_EQ(timings[0].exec_us, 500);
    EXPECT_EQ(timings[0].adapter_us, 100);
    EXPECT_EQ(timings[0].logic_us, 400);
}

TEST(TickTimings, UnbalancedTracesRejected) {
    RunTrace end_only;
    end_only.add(0, "step_end", "N");
    EXPECT_THROW(tick_timings(end_only), Error);
    RunTrace twice;
    twice.add(0, "adapter_in_begin", "N");
    twice.add(1, "adapter_in_begin", "N");
    EXPECT_THROW(tick_timings(twice), Error);
    RunTrace open;
    open.add(0, "adapter_in_begin", "N");
    try {
        tick_timings(open);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnbalancedTrace);
    }
}

TEST(Measure, WithinCycleShare) {
    RunTrace trace;
    for (int i = 0; i < 10; ++i) {
        const auto one = tick(i * 50000, 10, i == 9 ? 60000 : 100, 10);
        for (const auto& r : one.records()) trace.add(r.t_us, r.kind, r.node, r.payload);
    }
    const auto report = measure(trace, {{"N", 50.0}});
    ASSERT_EQ(report.nodes.size(), 1U);
    EXPECT_DOUBLE_EQ(*report.nodes[0].within_cycle, 0.9);
    EXPECT_EQ(report.nodes[0].t_adapter.median, 20);
    EXPECT_EQ(report.nodes[0].t_exec.count, 10U);
}

RunTrace publications(const std::vector<double>& values, const std::string& path = "Out.Y") {
    RunTrace r;
    for (std::size_t i = 0; i < values.size(); ++i) {
        r.add(static_cast<std::int64_t>(i) * 100, "publish", "N", {{"path", path}, {"value", values[i]}});
    }
    return r;
}

TEST(Compare, IdenticalTracesAreEquivalent) {
    const auto a = publications({1, 2, 3});
    const auto report = compare_behavior(a, a, {"Out.Y"});
    EXPECT_TRUE(report.equivalent());
    EXPECT_EQ(report.events[0].matches, 3U);
}

TEST(Compare, FirstDivergenceIsReported) {
    const auto report = compare_behavior(publications({1, 2, 3, 4}), publications({1, 2, 3.0000001, 5}), {"Out.Y"});
    EXPECT_FALSE(report.equivalent());
    const auto& d = *report.events[0].first_divergence;
    EXPECT_EQ(d.index, 2U);
    EXPECT_EQ(d.expected, json(3.0));
    EXPECT_EQ(d.actual, json(3.0000001));
    EXPECT_EQ(report.events[0].matches, 2U);
}

TEST(Compare, LengthDifferenceDiverges) {
    const auto report = compare_behavior(publications({1, 2, 3}), publications({1, 2}), {"Out.Y"});
    EXPECT_FALSE(report.equivalent());
    EXPECT_TRUE(report.events[0].first_divergence->actual.is_null());
}

TEST(Compare, AbsentEventRejected) {
    try {
        compare_behavior(publications({1}), publications({1}, "Out.Z"), {"Out.Y"});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnknownEvent);
    }
}

TEST(Compare, ReplayPublicationsIgnored) {
    RunTrace a = publications({1});
    RunTrace b = publications({1});
    b.add(500, "publish", "replay", {{"path", "Out.Y"}, {"value", 9}});
    EXPECT_TRUE(compare_behavior(a, b, {"Out.Y"}).equivalent());
}

TEST(Pipeline, AdapterAndBaselineAreBitIdenticalOnTheDemo) {
    const auto manifests = test::demo_manifests();
    const auto stimuli = load_trace(demo_trace_jsonl());
    RunOptions options;
    const auto adapter = run_application(manifests, stimuli, options);
    const auto baseline = run_baseline_application(manifests, stimuli, options);
    const auto report = compare_behavior(baseline, adapter.trace, demo_equivalence_events());
    EXPECT_TRUE(report.equivalent()) << to_text(report);
    for (const auto& e : report.events) {
        EXPECT_EQ(e.count_a, e.count_b);
        EXPECT_GT(e.count_a, 0U);
    }
}

TEST(Pipeline, PerturbedFunctionIsDetected) {
    class Perturbed : public CoreAccFunction {
    public:
        SignalValues get_external_outputs() const override {
            SignalValues out = CoreAccFunction::get_external_outputs();
            for (auto& [path, value] : out) {
                if (path == "Vehicle.ADAS.ACC.AccelerationRequest") value = value.get<double>() + 0.5;
            }
            return out;
        }
    };
    const auto manifests = test::demo_manifests();
    const auto stimuli = load_trace(demo_trace_jsonl());
    RunOptions options;
    options.duration_us = 5000000;
    const auto baseline = run_baseline_application(manifests, stimuli, options);
    options.factory = [](const std::string& name) -> std::shared_ptr<PlatformFunction> {
        if (name == "CoreAcc") return std::make_shared<Perturbed>();
        return make_demo_function(name);
    };
    const auto adapter = run_application(manifests, stimuli, options);
    const auto report = compare_behavior(baseline, adapter.trace, {"Vehicle.ADAS.ACC.AccelerationRequest"});
    EXPECT_FALSE(report.equivalent());
}

TEST(Pipeline, ScheduledStepCountsOnTheDemo) {
    const auto manifests = test::demo_manifests();
    RunOptions options;
    options.duration_us = 5000000;
    const auto outcome = run_application(manifests, SignalTrace{}, options);
    EXPECT_EQ(outcome.trace.count("step_begin", "CoreAccSwc"), 100U);
    EXPECT_EQ(outcome.trace.count("step_begin", "EcoMpcSwc"), 10U);
}

TEST(Pipeline, ManifestsRecoverFunctionModels) {
    for (const auto& m : test::demo_manifests()) {
        const FunctionModel f = function_model_from_manifest(m);
        EXPECT_EQ(f.name, m.function_name);
        EXPECT_EQ(f.interface_data.size(), m.subscriptions.size() + m.publications.size());
        EXPECT_EQ(f.scheduling.cycle_time, m.cycle_time);
    }
}

TEST(Pipeline, CheckModelTextClassifiesDocuments) {
    EXPECT_TRUE(check_model_text(test::demo_text("core_acc.json")).valid());
    EXPECT_TRUE(check_model_text(serialize_integration_model(test::demo_integration())).valid());
    EXPECT_FALSE(check_model_text("{").valid());
    EXPECT_FALSE(check_model_text("{}", ModelKind::kIntegration).valid());
}

}  // namespace
}  // namespace fnkit
