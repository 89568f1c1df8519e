// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes.

#include "fnkit/adapter_codegen.hpp"
#include "fnkit/cli.hpp"
#include "fnkit/demo.hpp"
#include "fnkit/integration_model.hpp"
#include "fnkit/kpi.hpp"
#include "fnkit/pipeline.hpp"
#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/error_manager.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"
#include "fnkit/runtime/scheduler.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace {

using namespace fnkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

const std::string& fixture(const std::string& name) { return demo_fixtures().at(name); }

IntegrationModel demo_integration() {
    return transform({parse_function_model(fixture("core_acc.json")), parse_function_model(fixture("eco_mpc.json"))},
                     parse_platform(fixture("platform.json")), parse_topology(fixture("topology.json")));
}

std::vector<AdapterManifest> demo_manifests() {
    const auto model = demo_integration();
    std::vector<AdapterManifest> out;
    for (const auto& c : model.components) out.push_back(build_manifest(model, c.name));
    return out;
}

AdapterManifest& find(std::vector<AdapterManifest>& manifests, const std::string& component) {
    for (auto& m : manifests) {
        if (m.component_name == component) return m;
    }
    throw std::runtime_error("no manifest " + component);
}

std::vector<std::string> values_of(const RunTrace& trace, const std::string& path) {
    std::vector<std::string> out;
    for (const auto& r : trace.records()) {
        if (r.kind == "publish" && r.node != "replay" && r.payload.value("path", "") == path) {
            out.push_back(r.payload.at("value").dump());
        }
    }
    return out;
}

// 1. Baseline and adapter runs of the 60 s demo publish identical values.
Outcome equivalence() {
    const auto manifests = demo_manifests();
    const auto stimuli = load_trace(demo_trace_jsonl());
    RunOptions options;
    options.duration_us = 60000000;
    const auto start = Clock::now();
    const auto adapter = run_application(manifests, stimuli, options);
    const double elapsed = seconds_since(start);
    const auto baseline = run_baseline_application(manifests, stimuli, options);
    bool same = true;
    std::string detail;
    for (const auto& event : demo_equivalence_events()) {
        const auto a = values_of(baseline, event);
        const auto b = values_of(adapter.trace, event);
        same = same && !a.empty() && a == b;
        detail += event + " " + std::to_string(b.size()) + "/" + std::to_string(a.size()) + ", ";
    }
    detail += "virtual run " + fixed(elapsed, 2) + " s";
    return {same && elapsed < 10.0, detail};
}

// 2. Wall-clock run: 50 ms node median t_adapter < 2.5 ms, t_exec < cycle
// for at least 99% of ticks.
Outcome adapter_overhead() {
    const auto manifests = demo_manifests();
    const auto stimuli = load_trace(demo_trace_jsonl());
    RunOptions options;
    options.clock = ClockMode::kWall;
    options.duration_us = 60000000;
    const auto start = Clock::now();
    const auto outcome = run_application(manifests, stimuli, options);
    const double elapsed = seconds_since(start);
    const auto report = measure(outcome.trace, outcome.cycle_time_ms);
    for (const auto& node : report.nodes) {
        if (node.cycle_time_ms != 50.0) continue;
        const double median_ms = node.t_adapter.median / 1000.0;
        const double share = node.within_cycle.value_or(0.0);
        const bool pass = elapsed >= 60.0 && node.t_adapter.count > 0 && median_ms < 2.5 && share >= 0.99;
        return {pass, node.node + " median t_adapter " + fixed(median_ms, 4) + " ms, t_exec within cycle " +
                          fixed(100.0 * share, 2) + "% of " + std::to_string(node.t_exec.count) + " ticks, wall " +
                          fixed(elapsed, 1) + " s"};
    }
    return {false, "no 50 ms node"};
}

// 3. Generated-code fraction of both adapters.
Outcome generated_fraction() {
    const auto model = demo_integration();
    bool pass = !model.components.empty();
    std::string detail;
    for (const auto& c : model.components) {
        const auto report = loc_report(generate_adapter(model, c.name, builtin_templates()));
        pass = pass && report.fraction_generated >= 0.90;
        detail += (detail.empty() ? "" : ", ") + c.name + " " + fixed(report.fraction_generated, 3) + " (" +
                  std::to_string(report.generated_loc) + "/" + std::to_string(report.manual_loc) + ")";
    }
    return {pass, detail};
}

// 4. transform + generate from the raw documents.
Outcome configuration_speed() {
    const auto start = Clock::now();
    const auto model = demo_integration();
    std::size_t files = 0;
    for (const auto& c : model.components) files += generate_adapter(model, c.name, builtin_templates()).files.size();
    const double elapsed = seconds_since(start);
    return {files > 0 && elapsed < 1.0, "transform + generate " + fixed(elapsed * 1000.0, 2) + " ms"};
}

// 5. Every (primary state, transition) pair against the documented edges.
class CountingFunction : public PlatformFunction {
public:
    void init() override {
        ++inits;
        ready = true;
    }
    void step() override {
        if (ready) ++steps;
    }
    void terminate() override { ++terminates; }
    void set_external_inputs(const SignalValues&) override {}
    SignalValues get_external_outputs() const override { return {}; }
    int inits = 0;
    int steps = 0;
    int terminates = 0;
    bool ready = false;
};

Outcome lifecycle() {
    using S = LifecycleState;
    const std::map<std::pair<S, S>, S> documented = {
        {{S::kUnconfigured, S::kConfiguring}, S::kInactive},  {{S::kInactive, S::kActivating}, S::kActive},
        {{S::kActive, S::kDeactivating}, S::kInactive},       {{S::kInactive, S::kCleaningUp}, S::kUnconfigured},
        {{S::kUnconfigured, S::kShuttingDown}, S::kFinalized}, {{S::kInactive, S::kShuttingDown}, S::kFinalized},
        {{S::kActive, S::kShuttingDown}, S::kFinalized},
    };
    const std::map<S, std::vector<S>> paths = {{S::kUnconfigured, {}},
                                               {S::kInactive, {S::kConfiguring}},
                                               {S::kActive, {S::kConfiguring, S::kActivating}},
                                               {S::kFinalized, {S::kShuttingDown}}};
    AdapterManifest manifest;
    manifest.component_name = "Probe";
    manifest.function_name = "Probe";
    manifest.cycle_time = 50;
    const auto start = Clock::now();
    std::size_t pairs = 0;
    std::size_t bad = 0;
    for (const auto& [from, path] : paths) {
        for (S transition : all_lifecycle_states()) {
            SimClock clock;
            RunTrace trace;
            Bus bus(clock, trace);
            auto fn = std::make_shared<CountingFunction>();
            LifecycleNode node(manifest, fn, bus);
            for (S t : path) node.trigger(t);
            ++pairs;
            const auto edge = documented.find({from, transition});
            bool ok = true;
            try {
                const S to = node.trigger(transition);
                ok = edge != documented.end() && to == edge->second;
            } catch (const Error& e) {
                ok = edge == documented.end() && e.kind() == ErrorKind::kIllegalTransition && node.state() == from;
            }
            ok = ok && static_cast<std::size_t>(fn->inits) == node.configuring_completions() &&
                 static_cast<std::size_t>(fn->terminates) == node.shutting_down_completions();
            const int before = fn->steps;
            node.tick(clock.now_us());
            ok = ok && (fn->steps - before) == (node.state() == S::kActive ? 1 : 0);
            bool active = false;
            for (const auto& r : trace.records()) {
                if (r.kind == "transition") active = r.payload["to"] == "Active";
                if (r.kind == "step_begin" && !active) ok = false;
            }
            bad += ok ? 0 : 1;
        }
    }
    const double elapsed = seconds_since(start);
    return {bad == 0 && elapsed < 1.0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " wrong, " +
                                           fixed(elapsed * 1000.0, 2) + " ms"};
}

// 6. Error states against a 1 ms brute-force oracle.
Outcome error_oracle() {
    std::mt19937 rng(7);
    const int waveforms = 1000;
    int agree = 0;
    for (int n = 0; n < waveforms; ++n) {
        const int maturation = static_cast<int>(rng() % 501);
        const int reset = static_cast<int>(rng() % 501);
        std::vector<bool> w;
        bool level = rng() % 2 == 0;
        while (w.size() < 3000) {
            const int run = 1 + static_cast<int>(rng() % 700);
            for (int i = 0; i < run && w.size() < 3000; ++i) w.push_back(level);
            level = !level;
        }
        auto held = [&](int from, int to, bool value) {
            if (from < 0) return false;
            for (int k = from; k <= to; ++k) {
                if (w[k] != value) return false;
            }
            return true;
        };
        const std::vector<ErrorSpec> specs = {
            ErrorSpec{"E", BooleanDatatype{}, double(maturation), "Low", double(reset), "-", "-", {}}};
        ErrorStates states;
        bool active = false;
        bool ok = true;
        for (int k = 0; k < static_cast<int>(w.size()) && ok; ++k) {
            active = held(k - maturation, k, true) || (active && !held(k - reset, k, false));
            const ErrorStatus expected = active ? (w[k] ? ErrorStatus::kSet : ErrorStatus::kResetting)
                                                : (w[k] ? ErrorStatus::kMaturing : ErrorStatus::kClear);
            evaluate_errors(states, specs, {{"E", w[k]}}, static_cast<std::int64_t>(k) * 1000);
            ok = states["E"].status == expected;
        }
        agree += ok ? 1 : 0;
    }
    return {agree == waveforms, std::to_string(agree) + "/" + std::to_string(waveforms) + " waveforms agree"};
}

// 7. Deadline violation from an injected delay; alive violation from a
// shortfall of indications.
class DelayedCoreAcc : public CoreAccFunction {
public:
    void step() override {
        CoreAccFunction::step();
        if (++count_ == 10) std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }

private:
    int count_ = 0;
};

Outcome watchdog() {
    const auto stimuli = load_trace(demo_trace_jsonl());
    auto manifests = demo_manifests();
    RunOptions options;
    options.clock = ClockMode::kWall;
    options.duration_us = 2000000;
    options.factory = [](const std::string& name) -> std::shared_ptr<PlatformFunction> {
        if (name == "CoreAcc") return std::make_shared<DelayedCoreAcc>();
        return make_demo_function(name);
    };
    const auto delayed = run_application(manifests, stimuli, options);
    const std::string deadline_error = find(manifests, "CoreAccSwc").watchdog.deadline_limits->error_name;
    std::size_t deadline = 0;
    bool named = true;
    for (const auto& r : delayed.trace.records()) {
        if (r.kind == "watchdog_violation" && r.payload["check"] == "deadline") {
            ++deadline;
            named = named && r.payload["error"] == deadline_error;
        }
    }

    auto starved = demo_manifests();
    find(starved, "CoreAccSwc").cycle_time = 100;  // 5 indications per 500 ms window, 9 required
    RunOptions virtual_options;
    virtual_options.duration_us = 2000000;
    const auto slow = run_application(starved, stimuli, virtual_options);
    const std::string alive_error = find(starved, "CoreAccSwc").watchdog.alive_limits->error_name;
    std::size_t alive = 0;
    for (const auto& r : slow.trace.records()) {
        if (r.kind == "watchdog_violation" && r.payload["check"] == "alive" && r.payload["error"] == alive_error) {
            ++alive;
        }
    }
    return {deadline == 1 && named && alive > 0, std::to_string(deadline) + " deadline violation(s) naming " +
                                                      deadline_error + ", " + std::to_string(alive) +
                                                      " alive violation(s)"};
}

// 8. Two virtual-clock `run` commands write identical RunTrace files.
Outcome determinism(const fs::path& work) {
    std::ostringstream out;
    std::ostringstream err;
    const fs::path dir = work / "determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name, std::ios::binary) << text;
    };
    for (const auto& [name, text] : demo_fixtures()) write(name, text);
    write("demo_trace.jsonl", demo_trace_jsonl());
    auto p = [&](const std::string& name) { return (dir / name).string(); };
    int rc = run_cli({"transform", p("core_acc.json"), p("eco_mpc.json"), "--platform", p("platform.json"),
                      "--topology", p("topology.json"), "--out", p("integration.json")},
                     out, err);
    rc = rc != 0 ? rc : run_cli({"generate", p("integration.json"), "--out", p("generated")}, out, err);
    for (const char* run : {"run_1.jsonl", "run_2.jsonl"}) {
        if (rc != 0) break;
        rc = run_cli({"run", "--manifests", p("generated/CoreAccSwc"), "--manifests", p("generated/EcoMpcSwc"),
                      "--trace", p("demo_trace.jsonl"), "--clock", "virtual", "--duration", "60", "--out", p(run)},
                     out, err);
    }
    if (rc != 0) return {false, "command failed: " + err.str()};
    auto read = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::string a = read(dir / "run_1.jsonl");
    const std::string b = read(dir / "run_2.jsonl");
    fs::remove_all(dir);
    return {!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

// 9. Corpus against the built-in validator and the emitted schema, checked
// by jsonschema in Python.
Outcome schema_gate(const std::string& python, const std::string& fnkit, const fs::path& source) {
    const std::string command = "\"" + python + "\" \"" + (source / "tools/check_corpus.py").string() + "\" \"" +
                                fnkit + "\" \"" + (source / "fixtures").string() + "\" 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return {false, "cannot start " + python};
    std::string output;
    char buffer[512];
    while (fgets(buffer, sizeof buffer, pipe) != nullptr) output += buffer;
    const int status = pclose(pipe);
    std::string summary;
    std::istringstream lines(output);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) summary += (summary.empty() ? "" : "; ") + line;
    }
    return {status == 0, summary};
}

// 10. 50 ms and 500 ms nodes over 5 s of virtual time.
Outcome scheduling() {
    auto manifests = demo_manifests();
    RunOptions options;
    options.duration_us = 5000000;
    const auto outcome = run_application(manifests, SignalTrace{}, options);
    std::map<std::string, std::size_t> steps;
    std::map<std::int64_t, std::vector<std::string>> by_time;
    for (const auto& r : outcome.trace.records()) {
        if (r.kind == "step_begin") {
            ++steps[r.node];
            by_time[r.t_us].push_back(r.node);
        }
    }
    std::vector<const AdapterManifest*> order;
    for (const auto& m : manifests) order.push_back(&m);
    std::sort(order.begin(), order.end(), [](const AdapterManifest* a, const AdapterManifest* b) {
        return a->priority != b->priority ? a->priority < b->priority : a->component_name < b->component_name;
    });
    std::vector<std::string> expected;
    for (const auto* m : order) expected.push_back(m->component_name);
    std::size_t coinciding = 0;
    bool ordered = true;
    for (const auto& [t, nodes] : by_time) {
        if (nodes.size() < 2) continue;
        ++coinciding;
        ordered = ordered && nodes == expected;
    }
    const std::size_t fast = steps["CoreAccSwc"];
    const std::size_t slow = steps["EcoMpcSwc"];
    return {fast == 100 && slow == 10 && coinciding == 10 && ordered,
            "50 ms node " + std::to_string(fast) + " steps, 500 ms node " + std::to_string(slow) + " steps, " +
                std::to_string(coinciding) + " coinciding ticks " + (ordered ? "in" : "out of") + " priority order"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fnkit acceptance criteria"};
    std::string fnkit = FNKIT_CLI_PATH;
    std::string python = FNKIT_PYTHON;
    std::string source = FNKIT_SOURCE_DIR;
    std::string work = fs::temp_directory_path().string();
    std::vector<int> only;
    app.add_option("--fnkit", fnkit, "fnkit binary")->capture_default_str();
    app.add_option("--python", python, "Python interpreter with jsonschema")->capture_default_str();
    app.add_option("--source", source, "source tree")->capture_default_str();
    app.add_option("--work", work, "scratch directory")->capture_default_str();
    app.add_option("--only", only, "criterion numbers to run")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"equivalence", equivalence},
        {"adapter overhead", adapter_overhead},
        {"generated fraction", generated_fraction},
        {"configuration speed", configuration_speed},
        {"lifecycle", lifecycle},
        {"error-state oracle", error_oracle},
        {"watchdog", watchdog},
        {"determinism", [&] { return determinism(work); }},
        {"schema gate", [&] { return schema_gate(python, fnkit, source); }},
        {"scheduling", scheduling},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << number << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
