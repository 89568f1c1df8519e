// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file error_manager.hpp
/// @brief Error maturation/reset state machine and safety reactions.
///
///   Clear     -> Maturing  condition true (straight to Set when MaturationTime is 0)
///   Maturing  -> Set       condition true continuously for >= MaturationTime
///   Maturing  -> Clear     condition false
///   Set       -> Resetting condition false and no dependency Set (Clear when ResetTime is 0)
///   Resetting -> Set       condition true again
///   Resetting -> Clear     condition false continuously for >= ResetTime
///
/// When an error becomes Set, every error listing it in Dependencies is Set
/// at the same time (one hop per evaluation).

#pragma once

#include "fnkit/function_model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

enum class ErrorStatus { kClear, kMaturing, kSet, kResetting };
std::string_view to_string(ErrorStatus status);

struct ErrorState {
    ErrorStatus status = ErrorStatus::kClear;
    std::optional<std::int64_t> condition_since;
    std::optional<std::int64_t> reset_since;

    bool operator==(const ErrorState&) const = default;
};

using ErrorStates = std::map<std::string, ErrorState>;

/// Milliseconds to microseconds, rounded.
std::int64_t ms_to_us(double ms);

/// Evaluates every spec at time `t_us`. Errors missing from `conditions`
/// have a false condition. Returns the names whose status changed, in spec
/// order. Throws Error{kUnknownError} for a condition without a spec.
std::vector<std::string> evaluate_errors(ErrorStates& states, const std::vector<ErrorSpec>& specs,
                                         const std::map<std::string, bool>& conditions, std::int64_t t_us);

/// Reaction name -> OR over its errors' Set status. Throws
/// Error{kUnknownError} when a listed error has no state.
std::map<std::string, bool> evaluate_safety(const std::vector<SafetyReaction>& reactions, const ErrorStates& states);

class ErrorManager {
public:
    explicit ErrorManager(std::vector<ErrorSpec> specs = {});

    struct Change {
        std::string name;
        ErrorStatus from;
        ErrorStatus to;
    };
    std::vector<Change> evaluate(const std::map<std::string, bool>& conditions, std::int64_t t_us);

    const std::vector<ErrorSpec>& specs() const { return specs_; }
    const ErrorStates& states() const { return states_; }
    ErrorStatus status(const std::string& name) const;
    bool has(const std::string& name) const { return states_.count(name) != 0; }
    void reset();

private:
    std::vector<ErrorSpec> specs_;
    ErrorStates states_;
};

}  // namespace fnkit
