// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/watchdog.hpp"

#include "fnkit/runtime/error_manager.hpp"

namespace fnkit {

nlohmann::json to_json(const WatchdogViolation& v) {
    return {{"check", v.check}, {"error", v.error_name}, {"detail", v.detail}};
}

std::optional<WatchdogViolation> check_alive(const WatchdogSpec& spec, std::uint64_t indications,
                                             std::int64_t window_end_us) {
    if (!spec.supervision_type.alive || !spec.alive_limits) return std::nullopt;
    const auto& limits = *spec.alive_limits;
    if (indications >= limits.min_indications && indications <= limits.max_indications) return std::nullopt;
    return WatchdogViolation{"alive", limits.error_name, window_end_us,
                             std::to_string(indications) + " indications, expected [" +
                                 std::to_string(limits.min_indications) + "," +
                                 std::to_string(limits.max_indications) + "]"};
}

std::optional<WatchdogViolation> check_deadline(const WatchdogSpec& spec, std::int64_t duration_us,
                                                std::int64_t t_us) {
    if (!spec.supervision_type.deadline || !spec.deadline_limits) return std::nullopt;
    const auto& limits = *spec.deadline_limits;
    if (duration_us >= ms_to_us(limits.min_duration) && duration_us <= ms_to_us(limits.max_duration)) {
        return std::nullopt;
    }
    return WatchdogViolation{"deadline", limits.error_name, t_us,
                             "step took " + std::to_string(duration_us) + " us"};
}

std::optional<WatchdogViolation> check_logical(const WatchdogSpec& spec, const std::vector<std::string>& checkpoints,
                                               std::int64_t t_us) {
    if (!spec.supervision_type.logical || !spec.logical_check) return std::nullopt;
    if (checkpoints == spec.logical_check->expected_order) return std::nullopt;
    std::string seen;
    for (const auto& c : checkpoints) seen += (seen.empty() ? "" : ",") + c;
    return WatchdogViolation{"logical", spec.logical_check->error_name, t_us, "checkpoints [" + seen + "]"};
}

std::vector<WatchdogViolation> supervise(const WatchdogSpec& spec, const RunTrace& trace, const std::string& node,
                                         const SuperviseWindow& window) {
    std::vector<WatchdogViolation> out;
    std::vector<std::int64_t> step_starts;
    std::int64_t open_at = 0;
    bool in_step = false;
    std::vector<std::string> checkpoints;
    for (const auto& r : trace.records()) {
        if (r.node != node || r.t_us < window.begin_us || r.t_us >= window.end_us) continue;
        if (r.kind == "step_begin") {
            open_at = r.t_us;
            in_step = true;
            checkpoints.clear();
            step_starts.push_back(r.t_us);
        } else if (r.kind == "checkpoint" && in_step) {
            checkpoints.push_back(r.payload.value("name", ""));
        } else if (r.kind == "step_end" && in_step) {
            if (auto v = check_deadline(spec, r.t_us - open_at, r.t_us)) out.push_back(*v);
            if (auto v = check_logical(spec, checkpoints, r.t_us)) out.push_back(*v);
            in_step = false;
        }
    }
    if (spec.supervision_type.alive && spec.alive_limits) {
        const std::int64_t width = ms_to_us(spec.alive_limits->reference_window);
        for (std::int64_t begin = window.begin_us; width > 0 && begin + width <= window.end_us; begin += width) {
            std::uint64_t n = 0;
            for (auto s : step_starts) n += (s >= begin && s < begin + width) ? 1 : 0;
            if (auto v = check_alive(spec, n, begin + width)) out.push_back(*v);
        }
    }
    return out;
}

}  // namespace fnkit
