// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/error_manager.hpp"

#include <cmath>

namespace fnkit {

std::string_view to_string(ErrorStatus status) {
    switch (status) {
        case ErrorStatus::kClear: return "Clear";
        case ErrorStatus::kMaturing: return "Maturing";
        case ErrorStatus::kSet: return "Set";
        case ErrorStatus::kResetting: return "Resetting";
    }
    return "Clear";
}

std::int64_t ms_to_us(double ms) { return static_cast<std::int64_t>(std::llround(ms * 1000.0)); }

namespace {

bool is_set(const ErrorStates& states, const std::string& name) {
    auto it = states.find(name);
    return it != states.end() && (it->second.status == ErrorStatus::kSet ||
                                  it->second.status == ErrorStatus::kResetting);
}

void latch(ErrorState& s, std::int64_t t) {
    s.status = ErrorStatus::kSet;
    if (!s.condition_since) s.condition_since = t;
    s.reset_since.reset();
}

}  // namespace

std::vector<std::string> evaluate_errors(ErrorStates& states, const std::vector<ErrorSpec>& specs,
                                         const std::map<std::string, bool>& conditions, std::int64_t t) {
    for (const auto& [name, value] : conditions) {
        bool known = false;
        for (const auto& spec : specs) known = known || spec.name == name;
        if (!known) throw Error(ErrorKind::kUnknownError, "unknown error " + name);
    }
    std::map<std::string, ErrorStatus> before;
    for (const auto& spec : specs) before[spec.name] = states[spec.name].status;

    std::vector<std::string> newly_set;
    for (const auto& spec : specs) {
        ErrorState& s = states[spec.name];
        auto found = conditions.find(spec.name);
        const bool condition = found != conditions.end() && found->second;
        const std::int64_t maturation = ms_to_us(spec.maturation_time);
        const std::int64_t reset = ms_to_us(spec.reset_time);
        switch (s.status) {
            case ErrorStatus::kClear:
                if (condition) {
                    s.condition_since = t;
                    if (maturation <= 0) {
                        latch(s, t);
                        newly_set.push_back(spec.name);
                    } else {
                        s.status = ErrorStatus::kMaturing;
                    }
                }
                break;
            case ErrorStatus::kMaturing:
                if (!condition) {
                    s = ErrorState{};
                } else if (t - *s.condition_since >= maturation) {
                    latch(s, t);
                    newly_set.push_back(spec.name);
                }
                break;
            case ErrorStatus::kSet:
            case ErrorStatus::kResetting: {
                bool dependency_set = false;
                for (const auto& dep : spec.dependencies) dependency_set = dependency_set || is_set(states, dep);
                if (condition || dependency_set) {
                    s.status = ErrorStatus::kSet;
                    s.reset_since.reset();
                    break;
                }
                if (s.status == ErrorStatus::kSet) {
                    s.reset_since = t;
                    s.status = ErrorStatus::kResetting;
                }
                if (t - *s.reset_since >= reset) s = ErrorState{};
                break;
            }
        }
    }
    for (const auto& spec : specs) {
        ErrorState& s = states[spec.name];
        if (s.status == ErrorStatus::kSet) continue;
        for (const auto& dep : spec.dependencies) {
            bool hit = false;
            for (const auto& n : newly_set) hit = hit || n == dep;
            if (hit) {
                latch(s, t);
                break;
            }
        }
    }
    std::vector<std::string> changed;
    for (const auto& spec : specs) {
        if (states[spec.name].status != before[spec.name]) changed.push_back(spec.name);
    }
    return changed;
}

std::map<std::string, bool> evaluate_safety(const std::vector<SafetyReaction>& reactions, const ErrorStates& states) {
    std::map<std::string, bool> out;
    for (const auto& r : reactions) {
        bool active = false;
        for (const auto& e : r.error_list) {
            auto it = states.find(e);
            if (it == states.end()) throw Error(ErrorKind::kUnknownError, "reaction " + r.name + ": unknown error " + e);
            active = active || it->second.status == ErrorStatus::kSet || it->second.status == ErrorStatus::kResetting;
        }
        out[r.name] = active;
    }
    return out;
}

ErrorManager::ErrorManager(std::vector<ErrorSpec> specs) : specs_(std::move(specs)) { reset(); }

void ErrorManager::reset() {
    states_.clear();
    for (const auto& spec : specs_) states_[spec.name] = ErrorState{};
}

std::vector<ErrorManager::Change> ErrorManager::evaluate(const std::map<std::string, bool>& conditions,
                                                         std::int64_t t_us) {
    std::map<std::string, ErrorStatus> before;
    for (const auto& [name, s] : states_) before[name] = s.status;
    std::vector<Change> out;
    for (const auto& name : evaluate_errors(states_, specs_, conditions, t_us)) {
        out.push_back(Change{name, before[name], states_[name].status});
    }
    return out;
}

ErrorStatus ErrorManager::status(const std::string& name) const {
    auto it = states_.find(name);
    if (it == states_.end()) throw Error(ErrorKind::kUnknownError, "unknown error " + name);
    return it->second.status;
}

}  // namespace fnkit
