// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file lifecycle_node.hpp
/// @brief Managed execution unit binding an adapter manifest and a platform
///        function to the bus.
///
/// Legal edges (transition state in parentheses):
///   Unconfigured -(Configuring)->  Inactive      calls init()
///   Inactive     -(Activating)->   Active
///   Active       -(Deactivating)-> Inactive
///   Inactive     -(CleaningUp)->   Unconfigured
///   Unconfigured|Inactive|Active -(ShuttingDown)-> Finalized   calls terminate()
/// A failure inside a transition or a step passes through ErrorProcessing and
/// ends in Finalized when shutting down, otherwise in Unconfigured.

#pragma once

#include "fnkit/adapter_codegen.hpp"
#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/error_manager.hpp"
#include "fnkit/runtime/platform_function.hpp"
#include "fnkit/runtime/watchdog.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

enum class LifecycleState {
    kUnconfigured,
    kInactive,
    kActive,
    kFinalized,
    kConfiguring,
    kCleaningUp,
    kActivating,
    kDeactivating,
    kShuttingDown,
    kErrorProcessing,
};
std::string_view to_string(LifecycleState state);
std::optional<LifecycleState> parse_lifecycle_state(std::string_view text);
bool is_primary(LifecycleState state);
const std::vector<LifecycleState>& all_lifecycle_states();

/// Target primary state of `transition` from `from`, or nullopt when the
/// edge does not exist.
std::optional<LifecycleState> lifecycle_edge(LifecycleState from, LifecycleState transition);

class LifecycleNode {
public:
    /// Throws Error{kUnknownEvent} when a manifest event is not registered on
    /// the bus and Error{kTypeMismatch} when its datatype differs.
    LifecycleNode(AdapterManifest manifest, std::shared_ptr<PlatformFunction> function, Bus& bus);
    ~LifecycleNode();
    LifecycleNode(const LifecycleNode&) = delete;
    LifecycleNode& operator=(const LifecycleNode&) = delete;

    const std::string& name() const { return manifest_.component_name; }
    const AdapterManifest& manifest() const { return manifest_; }
    LifecycleState state() const { return state_; }

    /// Runs a transition. Throws Error{kIllegalTransition} (state unchanged)
    /// when no edge exists; failures inside the transition are absorbed and
    /// reported through ErrorProcessing and the trace.
    LifecycleState trigger(LifecycleState transition);

    /// One activation cycle at scheduled time `t_us`; no-op unless Active.
    void tick(std::int64_t t_us);
    /// Closes an alive reference window ending at `t_us`.
    void close_alive_window(std::int64_t t_us);

    std::int64_t cycle_us() const;
    std::int64_t offset_us() const;
    std::int64_t priority() const { return manifest_.priority; }

    std::size_t init_calls() const { return init_calls_; }
    std::size_t terminate_calls() const { return terminate_calls_; }
    std::size_t configuring_completions() const { return configuring_completions_; }
    std::size_t shutting_down_completions() const { return shutting_down_completions_; }
    std::size_t step_calls() const { return step_calls_; }

    const ErrorManager& errors() const { return errors_; }
    const std::map<std::string, bool>& safety_status() const { return safety_; }
    /// Current local buffer of a subscription.
    std::optional<Value> buffer(const std::string& source_path) const;

private:
    struct Input {
        const ManifestSubscription* spec = nullptr;
        Value value;
        Value init_value;
        std::optional<std::int64_t> last_publication;
    };

    void seed_buffers(bool capture_init);
    void record_transition(LifecycleState from, LifecycleState transition, LifecycleState to,
                           const std::string& error = {});
    void fail_step(const std::string& message);
    void evaluate(std::map<std::string, bool> conditions, std::int64_t t_us);
    std::string range_error_name() const;

    AdapterManifest manifest_;
    std::shared_ptr<PlatformFunction> function_;
    Bus& bus_;
    TypeTable types_;
    LifecycleState state_ = LifecycleState::kUnconfigured;
    std::map<std::string, Input> inputs_;
    std::vector<std::size_t> subscription_ids_;
    ErrorManager errors_;
    std::map<std::string, bool> safety_;
    std::set<std::string> pending_alive_;
    std::optional<std::int64_t> activated_at_;
    std::optional<std::int64_t> last_step_end_;
    std::uint64_t window_steps_ = 0;
    std::size_t init_calls_ = 0;
    std::size_t terminate_calls_ = 0;
    std::size_t configuring_completions_ = 0;
    std::size_t shutting_down_completions_ = 0;
    std::size_t step_calls_ = 0;
};

std::unique_ptr<LifecycleNode> create_node(const AdapterManifest& manifest, std::shared_ptr<PlatformFunction> function,
                                           Bus& bus);
LifecycleState trigger_transition(LifecycleNode& node, LifecycleState transition);

}  // namespace fnkit
