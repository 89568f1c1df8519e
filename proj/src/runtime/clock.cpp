// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/clock.hpp"

#include <thread>

namespace fnkit {

std::string_view to_string(ClockMode mode) { return mode == ClockMode::kVirtual ? "virtual" : "wall"; }

std::optional<ClockMode> parse_clock_mode(std::string_view text) {
    if (text == "virtual") return ClockMode::kVirtual;
    if (text == "wall") return ClockMode::kWall;
    return std::nullopt;
}

SimClock::SimClock(ClockMode mode) : mode_(mode), origin_(std::chrono::steady_clock::now()) {}

std::int64_t SimClock::now_us() const {
    if (mode_ == ClockMode::kVirtual) return virtual_now_;
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - origin_).count();
}

void SimClock::advance_to(std::int64_t t_us) {
    if (mode_ == ClockMode::kVirtual) {
        if (t_us > virtual_now_) virtual_now_ = t_us;
        return;
    }
    std::this_thread::sleep_until(origin_ + std::chrono::microseconds(t_us));
}

void SimClock::reset() {
    virtual_now_ = 0;
    origin_ = std::chrono::steady_clock::now();
}

}  // namespace fnkit
