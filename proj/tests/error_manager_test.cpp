// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/runtime/error_manager.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fnkit {
namespace {

ErrorSpec error(const std::string& name, double maturation, double reset, std::vector<std::string> deps = {}) {
    return ErrorSpec{name, BooleanDatatype{}, maturation, "Low", reset, "-", "-", std::move(deps)};
}

// Random piecewise-constant waveform sampled every millisecond.
std::vector<bool> waveform(std::mt19937& rng, int length) {
    std::vector<bool> w;
    bool level = rng() % 2 == 0;
    while (static_cast<int>(w.size()) < length) {
        const int run = 1 + static_cast<int>(rng() % 700);
        for (int i = 0; i < run && static_cast<int>(w.size()) < length; ++i) w.push_back(level);
        level = !level;
    }
    return w;
}

bool all_equal(const std::vector<bool>& w, int from, int to, bool value) {
    if (from < 0) return false;
    for (int k = from; k <= to; ++k) {
        if (w[k] != value) return false;
    }
    return true;
}

// Brute-force oracle on the 1 ms grid. An error is active (Set or
// Resetting) at k when the condition has held for the whole maturation
// time, or when it was active at k-1 and the condition has not been false
// for the whole reset time.
std::vector<ErrorStatus> oracle(const std::vector<bool>& w, int maturation_ms, int reset_ms) {
    std::vector<ErrorStatus> out;
    bool active = false;
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
        const bool matured = all_equal(w, k - maturation_ms, k, true);
        const bool released = all_equal(w, k - reset_ms, k, false);
        active = matured || (active && !released);
        if (active) {
            out.push_back(w[k] ? ErrorStatus::kSet : ErrorStatus::kResetting);
        } else {
            out.push_back(w[k] ? ErrorStatus::kMaturing : ErrorStatus::kClear);
        }
    }
    return out;
}

TEST(ErrorManager, MatchesMillisecondOracleOnRandomWaveforms) {
    std::mt19937 rng(20260101);
    int checked = 0;
    for (int n = 0; n < 1000; ++n) {
        const int maturation = static_cast<int>(rng() % 501);
        const int reset = static_cast<int>(rng() % 501);
        const std::vector<bool> w = waveform(rng, 3000);
        const std::vector<ErrorStatus> expected = oracle(w, maturation, reset);
        const std::vector<ErrorSpec> specs = {error("E", maturation, reset)};
        ErrorStates states;
        for (int k = 0; k < static_cast<int>(w.size()); ++k) {
            evaluate_errors(states, specs, {{"E", w[k]}}, static_cast<std::int64_t>(k) * 1000);
            if (states["E"].status != expected[k]) {
                FAIL() << "waveform " << n << " maturation " << maturation << " reset " << reset << " at " << k
                       << " ms: got " << to_string(states["E"].status) << ", expected " << to_string(expected[k]);
            }
        }
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(ErrorManager, ZeroTimesFollowTheCondition) {
    ErrorStates states;
    const std::vector<ErrorSpec> specs = {error("E", 0, 0)};
    evaluate_errors(states, specs, {{"E", true}}, 0);
    EXPECT_EQ(states["E"].status, ErrorStatus::kSet);
    evaluate_errors(states, specs, {{"E", false}}, 1000);
    EXPECT_EQ(states["E"].status, ErrorStatus::kClear);
}

TEST(ErrorManager, ShortPulseNeverMatures) {
    ErrorStates states;
    const std::vector<ErrorSpec> specs = {error("E", 100, 0)};
    for (int k = 0; k < 99; ++k) evaluate_errors(states, specs, {{"E", true}}, k * 1000);
    EXPECT_EQ(states["E"].status, ErrorStatus::kMaturing);
    evaluate_errors(states, specs, {{"E", false}}, 99000);
    EXPECT_EQ(states["E"].status, ErrorStatus::kClear);
}

TEST(ErrorManager, ChangedNamesAreReportedInSpecOrder) {
    ErrorStates states;
    const std::vector<ErrorSpec> specs = {error("B", 0, 0), error("A", 0, 0), error("C", 10, 0)};
    EXPECT_EQ(evaluate_errors(states, specs, {{"A", true}, {"B", true}, {"C", true}}, 0),
              (std::vector<std::string>{"B", "A", "C"}));
    EXPECT_TRUE(evaluate_errors(states, specs, {{"A", true}, {"B", true}, {"C", true}}, 1000).empty());
}

TEST(ErrorManager, UnknownConditionRejected) {
    ErrorStates states;
    try {
        evaluate_errors(states, {error("E", 0, 0)}, {{"F", true}}, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kUnknownError);
    }
}

TEST(ErrorManager, DependentErrorLatchesWithItsDependency) {
    ErrorStates states;
    const std::vector<ErrorSpec> specs = {error("Parent", 0, 0), error("Child", 50, 0, {"Parent"})};
    evaluate_errors(states, specs, {{"Parent", true}}, 0);
    EXPECT_EQ(states["Parent"].status, ErrorStatus::kSet);
    EXPECT_EQ(states["Child"].status, ErrorStatus::kSet);
    // held while the dependency stays set, released with it
    evaluate_errors(states, specs, {{"Parent", true}}, 1000);
    EXPECT_EQ(states["Child"].status, ErrorStatus::kSet);
    evaluate_errors(states, specs, {{"Parent", false}}, 2000);
    EXPECT_EQ(states["Parent"].status, ErrorStatus::kClear);
    evaluate_errors(states, specs, {{"Parent", false}}, 3000);
    EXPECT_EQ(states["Child"].status, ErrorStatus::kClear);
}

TEST(ErrorManager, DependencyListedBeforeItsParentStillLatches) {
    ErrorStates states;
    const std::vector<ErrorSpec> specs = {error("Child", 50, 0, {"Parent"}), error("Parent", 0, 0)};
    evaluate_errors(states, specs, {{"Parent", true}}, 0);
    EXPECT_EQ(states["Child"].status, ErrorStatus::kSet);
}

TEST(Safety, ReactionIsOrOverItsErrors) {
    const std::vector<ErrorSpec> specs = {error("A", 0, 10), error("B", 0, 0), error("C", 0, 0)};
    const std::vector<SafetyReaction> reactions = {SafetyReaction{"R1", BooleanDatatype{}, {"A", "B"}, "-"},
                                                   SafetyReaction{"R2", BooleanDatatype{}, {"C"}, "-"},
                                                   SafetyReaction{"R3", BooleanDatatype{}, {}, "-"}};
    std::mt19937 rng(5);
    ErrorStates states;
    for (int k = 0; k < 2000; ++k) {
        const std::map<std::string, bool> c = {{"A", rng() % 4 == 0}, {"B", rng() % 5 == 0}, {"C", rng() % 3 == 0}};
        evaluate_errors(states, specs, c, k * 1000);
        auto on = [&](const char* e) {
            return states[e].status == ErrorStatus::kSet || states[e].status == ErrorStatus::kResetting;
        };
        const auto safety = evaluate_safety(reactions, states);
        EXPECT_EQ(safety.at("R1"), on("A") || on("B"));
        EXPECT_EQ(safety.at("R2"), on("C"));
        EXPECT_FALSE(safety.at("R3"));
    }
}

TEST(Safety, UnknownErrorRejected) {
    EXPECT_THROW(evaluate_safety({SafetyReaction{"R", BooleanDatatype{}, {"Nope"}, "-"}}, {}), Error);
}

TEST(ErrorManager, ClassWrapsStateAndReportsTransitions) {
    ErrorManager manager({error("E", 10, 0)});
    EXPECT_EQ(manager.status("E"), ErrorStatus::kClear);
    auto changes = manager.evaluate({{"E", true}}, 0);
    ASSERT_EQ(changes.size(), 1U);
    EXPECT_EQ(changes[0].from, ErrorStatus::kClear);
    EXPECT_EQ(changes[0].to, ErrorStatus::kMaturing);
    changes = manager.evaluate({{"E", true}}, 10000);
    ASSERT_EQ(changes.size(), 1U);
    EXPECT_EQ(changes[0].to, ErrorStatus::kSet);
    manager.reset();
    EXPECT_EQ(manager.status("E"), ErrorStatus::kClear);
    EXPECT_THROW(manager.status("F"), Error);
}

TEST(ErrorManager, MillisecondsRoundToMicroseconds) {
    EXPECT_EQ(ms_to_us(0.0005), 1);
    EXPECT_EQ(ms_to_us(12.5), 12500);
    EXPECT_EQ(ms_to_us(0), 0);
}

}  // namespace
}  // namespace fnkit
