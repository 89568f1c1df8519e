// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file kpi.hpp
/// @brief Timing KPIs and behavior equivalence computed from RunTraces.
///
/// Per tick: t_exec spans adapter_in_begin..adapter_out_end, t_adapter is the
/// sum of the adapter-in and adapter-out phases, t_logic is the step.

#pragma once

#include "fnkit/runtime/run_trace.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fnkit {

/// Durations in microseconds. The median is the lower median; p95 is the
/// nearest-rank percentile (the ceil(0.95 n)-th smallest sample).
struct Stats {
    double median = 0.0;
    double p95 = 0.0;
    double max = 0.0;
    std::size_t count = 0;

    bool operator==(const Stats&) const = default;
};

Stats compute_stats(std::vector<double> samples);

struct TickTiming {
    std::string node;
    std::int64_t t_us = 0;
    std::int64_t exec_us = 0;
    std::int64_t adapter_us = 0;
    std::int64_t logic_us = 0;
};

/// Completed ticks in trace order. Ticks cut short by a failure are left
/// out. Throws Error{kUnbalancedTrace} for an end without a begin, a begin
/// while the same phase is open, or phases out of order.
std::vector<TickTiming> tick_timings(const RunTrace& trace);

struct NodeKpi {
    std::string node;
    Stats t_exec;
    Stats t_adapter;
    Stats t_logic;
    std::optional<double> cycle_time_ms;
    /// Share of ticks whose t_exec is below the cycle time.
    std::optional<double> within_cycle;
};

struct EventComparison {
    std::string event;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    std::size_t matches = 0;

    struct Divergence {
        std::size_t index = 0;
        std::optional<std::int64_t> t_a_us;
        std::optional<std::int64_t> t_b_us;
        nlohmann::json expected;  // value in trace a (null when missing)
        nlohmann::json actual;    // value in trace b (null when missing)
    };
    std::optional<Divergence> first_divergence;
};

struct EquivalenceReport {
    std::vector<EventComparison> events;
    bool equivalent() const;
};

struct ArtifactLoc {
    std::string component;
    std::size_t generated_loc = 0;
    std::size_t manual_loc = 0;
    double fraction_generated = 1.0;
};

struct KpiReport {
    std::vector<NodeKpi> nodes;
    std::optional<EquivalenceReport> equivalence;
    std::vector<ArtifactLoc> artifacts;
    std::optional<double> config_time_ms;
};

/// `cycle_time_ms` (node -> cycle) enables the within-cycle share.
KpiReport measure(const RunTrace& trace, const std::map<std::string, double>& cycle_time_ms = {});

/// Compares the published values of each listed signal path in order; the
/// timestamps are reported but not compared. Values compare bit-exactly.
/// Throws Error{kUnknownEvent} when an event has no publication in a trace.
EquivalenceReport compare_behavior(const RunTrace& a, const RunTrace& b, const std::vector<std::string>& events);

nlohmann::json to_json(const Stats& stats);
nlohmann::json to_json(const EquivalenceReport& report);
nlohmann::json to_json(const KpiReport& report);
std::string to_text(const EquivalenceReport& report);
std::string to_text(const KpiReport& report);

}  // namespace fnkit
