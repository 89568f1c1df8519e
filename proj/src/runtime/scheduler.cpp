// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fnkit {

SchedulerResult run_scheduler(const std::vector<LifecycleNode*>& nodes, Bus& bus, std::int64_t duration_us,
                              const SignalTrace* stimuli) {
    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
    SimClock& clock = bus.clock();
    const std::int64_t start = clock.now_us();
    const std::int64_t end = start + duration_us;

    std::vector<LifecycleNode*> order(nodes.begin(), nodes.end());
    std::sort(order.begin(), order.end(), [](const LifecycleNode* a, const LifecycleNode* b) {
        if (a->priority() != b->priority()) return a->priority() < b->priority();
        return a->name() < b->name();
    });

    std::vector<std::int64_t> next_tick(order.size(), kNever);
    std::vector<std::int64_t> next_window(order.size(), kNever);
    std::vector<std::int64_t> window_width(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i]->cycle_us() > 0) next_tick[i] = start + order[i]->offset_us();
        const auto& wd = order[i]->manifest().watchdog;
        if (wd.supervision_type.alive && wd.alive_limits) {
            window_width[i] = ms_to_us(wd.alive_limits->reference_window);
            if (window_width[i] > 0) next_window[i] = start + window_width[i];
        }
    }

    auto stimulus_time = [&](std::size_t k) {
        return start + static_cast<std::int64_t>(std::llround(stimuli->records[k].t_ms * 1000.0));
    };
    std::size_t next_stimulus = 0;
    const std::size_t stimulus_count = stimuli ? stimuli->records.size() : 0;

    SchedulerResult result;
    for (;;) {
        std::int64_t t = kNever;
        if (next_stimulus < stimulus_count && stimulus_time(next_stimulus) < end) t = stimulus_time(next_stimulus);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (next_tick[i] < end) t = std::min(t, next_tick[i]);
            if (next_window[i] <= end) t = std::min(t, next_window[i]);
        }
        if (t == kNever) break;
        clock.advance_to(t);

        while (next_stimulus < stimulus_count && stimulus_time(next_stimulus) == t) {
            const auto& r = stimuli->records[next_stimulus++];
            bus.publish(r.path, r.value, "replay");
            ++result.publications;
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (next_window[i] == t) {
                order[i]->close_alive_window(t);
                next_window[i] += window_width[i];
            }
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (next_tick[i] != t || t >= end) continue;
            if (order[i]->state() == LifecycleState::kActive) {
                ++result.ticks;
                order[i]->tick(t);
            }
            next_tick[i] += order[i]->cycle_us();
        }
    }
    clock.advance_to(end);
    return result;
}

}  // namespace fnkit
