// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file watchdog.hpp
/// @brief Alive, deadline and logical supervision checks.
///
/// The per-check helpers are shared by the online monitor in the lifecycle
/// node and the offline supervise() pass over a finished RunTrace.

#pragma once

#include "fnkit/function_model.hpp"
#include "fnkit/runtime/run_trace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fnkit {

struct WatchdogViolation {
    std::string check;  // "alive", "deadline" or "logical"
    std::string error_name;
    std::int64_t t_us = 0;
    std::string detail;

    bool operator==(const WatchdogViolation&) const = default;
};

nlohmann::json to_json(const WatchdogViolation& violation);

std::optional<WatchdogViolation> check_alive(const WatchdogSpec& spec, std::uint64_t indications,
                                             std::int64_t window_end_us);
std::optional<WatchdogViolation> check_deadline(const WatchdogSpec& spec, std::int64_t duration_us,
                                                std::int64_t t_us);
std::optional<WatchdogViolation> check_logical(const WatchdogSpec& spec, const std::vector<std::string>& checkpoints,
                                               std::int64_t t_us);

struct SuperviseWindow {
    std::int64_t begin_us = 0;
    std::int64_t end_us = 0;
};

/// Checks the step records of `node` inside the window. Alive counts steps
/// per consecutive reference window [begin + k*W, begin + (k+1)*W) that fits
/// entirely in the window; deadline checks each step_begin/step_end pair;
/// logical compares the checkpoint records of each step with ExpectedOrder.
std::vector<WatchdogViolation> supervise(const WatchdogSpec& spec, const RunTrace& trace, const std::string& node,
                                         const SuperviseWindow& window);

}  // namespace fnkit
