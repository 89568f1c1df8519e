// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file clock.hpp
/// @brief Simulation time in microseconds, virtual or wall.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fnkit {

enum class ClockMode { kVirtual, kWall };
std::string_view to_string(ClockMode mode);
std::optional<ClockMode> parse_clock_mode(std::string_view text);

/// Virtual mode: time only moves through advance_to(). Wall mode: now_us()
/// reads a monotonic clock relative to construction (or reset()), and
/// advance_to() sleeps until the target time.
class SimClock {
public:
    explicit SimClock(ClockMode mode = ClockMode::kVirtual);

    ClockMode mode() const { return mode_; }
    std::int64_t now_us() const;
    /// Never moves time backwards.
    void advance_to(std::int64_t t_us);
    void reset();

private:
    ClockMode mode_;
    std::int64_t virtual_now_ = 0;
    std::chrono::steady_clock::time_point origin_;
};

}  // namespace fnkit
