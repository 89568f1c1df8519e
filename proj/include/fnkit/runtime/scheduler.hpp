// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file scheduler.hpp
/// @brief Cyclic discrete-event executor over lifecycle nodes.
///
/// Each node ticks at start + InitialOffset + k*CycleTime for every such time
/// before start + duration. Events at the same instant run in this order:
/// stimulus publications, alive-window closings, node ticks by ascending
/// priority value and then node name.

#pragma once

#include "fnkit/replay.hpp"
#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"

#include <cstdint>
#include <vector>

namespace fnkit {

struct SchedulerResult {
    std::size_t ticks = 0;         // tick slots offered to Active nodes
    std::size_t publications = 0;  // stimulus records published
};

/// Records go to bus.trace(). `stimuli` timestamps are relative to the start.
SchedulerResult run_scheduler(const std::vector<LifecycleNode*>& nodes, Bus& bus, std::int64_t duration_us,
                              const SignalTrace* stimuli = nullptr);

}  // namespace fnkit
