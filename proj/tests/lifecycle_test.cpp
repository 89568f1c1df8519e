// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

namespace fnkit {
namespace {

using S = LifecycleState;

// The documented edges, written out independently of lifecycle_edge().
const std::map<std::pair<S, S>, S>& documented_edges() {
    static const std::map<std::pair<S, S>, S> edges = {
        {{S::kUnconfigured, S::kConfiguring}, S::kInactive},  {{S::kInactive, S::kActivating}, S::kActive},
        {{S::kActive, S::kDeactivating}, S::kInactive},       {{S::kInactive, S::kCleaningUp}, S::kUnconfigured},
        {{S::kUnconfigured, S::kShuttingDown}, S::kFinalized}, {{S::kInactive, S::kShuttingDown}, S::kFinalized},
        {{S::kActive, S::kShuttingDown}, S::kFinalized},
    };
    return edges;
}

struct Rig {
    SimClock clock;
    RunTrace trace;
    Bus bus{clock, trace};
    std::shared_ptr<test::ProbeFunction> fn = std::make_shared<test::ProbeFunction>();
    std::unique_ptr<LifecycleNode> node = create_node(test::simple_manifest("N", 50, 0), fn, bus);
};

// Drives a fresh node into a primary state through documented edges.
void reach(LifecycleNode& node, S state) {
    switch (state) {
        case S::kUnconfigured: break;
        case S::kInactive: node.trigger(S::kConfiguring); break;
        case S::kActive:
            node.trigger(S::kConfiguring);
            node.trigger(S::kActivating);
            break;
        case S::kFinalized: node.trigger(S::kShuttingDown); break;
        default: throw std::logic_error("not a primary state");
    }
    ASSERT_EQ(node.state(), state);
}

// Every step record must lie inside an Activating..(Deactivating|ShuttingDown)
// span of the same node.
bool steps_only_while_active(const RunTrace& trace) {
    std::map<std::string, bool> active;
    for (const auto& r : trace.records()) {
        if (r.kind == "transition") {
            active[r.node] = r.payload["to"] == "Active";
        } else if (r.kind == "step_begin" || r.kind == "step_end") {
            if (!active[r.node]) return false;
        }
    }
    return true;
}

TEST(Lifecycle, EdgeTableMatchesDocumentation) {
    std::size_t legal = 0;
    for (S from : all_lifecycle_states()) {
        for (S transition : all_lifecycle_states()) {
            const auto it = documented_edges().find({from, transition});
            const auto edge = lifecycle_edge(from, transition);
            if (it == documented_edges().end()) {
                EXPECT_FALSE(edge) << to_string(from) << " + " << to_string(transition);
            } else {
                ASSERT_TRUE(edge);
                EXPECT_EQ(*edge, it->second);
                ++legal;
            }
        }
    }
    EXPECT_EQ(legal, 7U);
}

TEST(Lifecycle, ExhaustiveStateTransitionPairs) {
    std::size_t attempts = 0;
    for (S from : {S::kUnconfigured, S::kInactive, S::kActive, S::kFinalized}) {
        for (S transition : all_lifecycle_states()) {
            Rig rig;
            reach(*rig.node, from);
            const int inits = rig.fn->inits;
            const int terminates = rig.fn->terminates;
            const auto it = documented_edges().find({from, transition});
            ++attempts;
            if (it == documented_edges().end()) {
                try {
                    rig.node->trigger(transition);
                    ADD_FAILURE() << to_string(from) << " + " << to_string(transition) << " succeeded";
                } catch (const Error& e) {
                    EXPECT_EQ(e.kind(), ErrorKind::kIllegalTransition);
                }
                EXPECT_EQ(rig.node->state(), from);
                EXPECT_EQ(rig.fn->inits, inits);
                EXPECT_EQ(rig.fn->terminates, terminates);
            } else {
                EXPECT_EQ(rig.node->trigger(transition), it->second);
                EXPECT_EQ(rig.fn->inits, inits + (transition == S::kConfiguring ? 1 : 0));
                EXPECT_EQ(rig.fn->terminates, terminates + (transition == S::kShuttingDown ? 1 : 0));
            }
            EXPECT_EQ(rig.node->init_calls(), rig.node->configuring_completions());
            EXPECT_EQ(rig.node->terminate_calls(), rig.node->shutting_down_completions());
            // a tick steps only in Active
            const int steps = rig.fn->steps;
            rig.node->tick(1000000);
            EXPECT_EQ(rig.fn->steps - steps, rig.node->state() == S::kActive ? 1 : 0);
            EXPECT_TRUE(steps_only_while_active(rig.trace));
        }
    }
    EXPECT_EQ(attempts, 4U * all_lifecycle_states().size());
}

TEST(Lifecycle, RandomWalksKeepCountsAndStepWindows) {
    std::mt19937 rng(1234);
    const auto& states = all_lifecycle_states();
    for (int walk = 0; walk < 200; ++walk) {
        Rig rig;
        std::int64_t t = 0;
        for (int i = 0; i < 60; ++i) {
            if (rng() % 3 == 0) {
                rig.node->tick(t);
            } else {
                const S transition = states[rng() % states.size()];
                const S before = rig.node->state();
                const bool legal = documented_edges().count({before, transition}) != 0;
                if (legal) {
                    rig.node->trigger(transition);
                } else {
                    EXPECT_THROW(rig.node->trigger(transition), Error);
                    EXPECT_EQ(rig.node->state(), before);
                }
            }
            t += 50000;
            rig.clock.advance_to(t);
        }
        EXPECT_EQ(static_cast<std::size_t>(rig.fn->inits), rig.node->configuring_completions());
        EXPECT_EQ(static_cast<std::size_t>(rig.fn->terminates), rig.node->shutting_down_completions());
        EXPECT_EQ(static_cast<std::size_t>(rig.fn->steps), rig.trace.count("step_begin"));
        EXPECT_TRUE(steps_only_while_active(rig.trace));
    }
}

TEST(Lifecycle, TransitionsAreRecorded) {
    Rig rig;
    rig.node->trigger(S::kConfiguring);
    rig.node->trigger(S::kActivating);
    rig.node->trigger(S::kDeactivating);
    rig.node->trigger(S::kCleaningUp);
    rig.node->trigger(S::kShuttingDown);
    std::vector<std::string> seen;
    for (const auto& r : rig.trace.records()) {
        seen.push_back(r.payload["from"].get<std::string>() + ">" + r.payload["to"].get<std::string>());
    }
    EXPECT_EQ(seen, (std::vector<std::string>{"Unconfigured>Inactive", "Inactive>Active", "Active>Inactive",
                                              "Inactive>Unconfigured", "Unconfigured>Finalized"}));
}

class FailingInit : public test::ProbeFunction {
public:
    void init() override {
        ++inits;
        throw std::runtime_error("no calibration");
    }
};

class FailingStep : public test::ProbeFunction {
public:
    void step() override { throw std::runtime_error("overflow"); }
};

class FailingTerminate : public test::ProbeFunction {
public:
    void terminate() override {
        ++terminates;
        throw std::runtime_error("stuck");
    }
};

TEST(Lifecycle, FailureInConfiguringReturnsToUnconfigured) {
    SimClock clock;
    RunTrace trace;
    Bus bus(clock, trace);
    auto fn = std::make_shared<FailingInit>();
    LifecycleNode node(test::simple_manifest("N", 50, 0), fn, bus);
    EXPECT_EQ(node.trigger(S::kConfiguring), S::kUnconfigured);
    EXPECT_EQ(node.init_calls(), 1U);
    EXPECT_EQ(node.configuring_completions(), 0U);
    const auto& r = trace.records().back();
    EXPECT_EQ(r.payload["to"], "Unconfigured");
    EXPECT_EQ(r.payload["error"].get<std::string>().rfind("ErrorProcessing: ", 0), 0U);
}

TEST(Lifecycle, FailureInStepLeavesActive) {
    SimClock clock;
    RunTrace trace;
    Bus bus(clock, trace);
    LifecycleNode node(test::simple_manifest("N", 50, 0), std::make_shared<FailingStep>(), bus);
    node.trigger(S::kConfiguring);
    node.trigger(S::kActivating);
    node.tick(0);
    EXPECT_EQ(node.state(), S::kUnconfigured);
    EXPECT_EQ(trace.records().back().payload["transition"], "ErrorProcessing");
    node.tick(50000);
    EXPECT_EQ(node.step_calls(), 1U);
}

TEST(Lifecycle, FailureInShuttingDownStillFinalizes) {
    SimClock clock;
    RunTrace trace;
    Bus bus(clock, trace);
    LifecycleNode node(test::simple_manifest("N", 50, 0), std::make_shared<FailingTerminate>(), bus);
    node.trigger(S::kConfiguring);
    EXPECT_EQ(node.trigger(S::kShuttingDown), S::kFinalized);
    EXPECT_EQ(node.terminate_calls(), 1U);
    EXPECT_EQ(node.shutting_down_completions(), 0U);
}

TEST(Lifecycle, StateNamesRoundTrip) {
    std::set<std::string> names;
    for (S s : all_lifecycle_states()) {
        names.insert(std::string(to_string(s)));
        EXPECT_EQ(parse_lifecycle_state(to_string(s)), s);
    }
    EXPECT_EQ(names.size(), 10U);
    EXPECT_FALSE(parse_lifecycle_state("Sleeping"));
}

TEST(PlatformFunction, StepBeforeInitHasNoEffect) {
    test::ProbeFunction fn;
    fn.step();
    EXPECT_EQ(fn.steps, 0);
    fn.init();
    fn.step();
    EXPECT_EQ(fn.steps, 1);
    fn.terminate();
    EXPECT_EQ(fn.terminates, 1);
}

}  // namespace
}  // namespace fnkit
