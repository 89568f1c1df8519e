// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/lifecycle_node.hpp"

#include <algorithm>

namespace fnkit {

using nlohmann::json;

namespace {

const std::vector<std::pair<LifecycleState, std::string_view>>& state_names() {
    static const std::vector<std::pair<LifecycleState, std::string_view>> names = {
        {LifecycleState::kUnconfigured, "Unconfigured"}, {LifecycleState::kInactive, "Inactive"},
        {LifecycleState::kActive, "Active"},             {LifecycleState::kFinalized, "Finalized"},
        {LifecycleState::kConfiguring, "Configuring"},   {LifecycleState::kCleaningUp, "CleaningUp"},
        {LifecycleState::kActivating, "Activating"},     {LifecycleState::kDeactivating, "Deactivating"},
        {LifecycleState::kShuttingDown, "ShuttingDown"}, {LifecycleState::kErrorProcessing, "ErrorProcessing"},
    };
    return names;
}

}  // namespace

std::string_view to_string(LifecycleState state) {
    for (const auto& [s, n] : state_names()) {
        if (s == state) return n;
    }
    return "Unconfigured";
}

std::optional<LifecycleState> parse_lifecycle_state(std::string_view text) {
    for (const auto& [s, n] : state_names()) {
        if (n == text) return s;
    }
    return std::nullopt;
}

bool is_primary(LifecycleState state) {
    return state == LifecycleState::kUnconfigured || state == LifecycleState::kInactive ||
           state == LifecycleState::kActive || state == LifecycleState::kFinalized;
}

const std::vector<LifecycleState>& all_lifecycle_states() {
    static const std::vector<LifecycleState> all = [] {
        std::vector<LifecycleState> v;
        for (const auto& [s, n] : state_names()) v.push_back(s);
        return v;
    }();
    return all;
}

std::optional<LifecycleState> lifecycle_edge(LifecycleState from, LifecycleState transition) {
    using S = LifecycleState;
    switch (transition) {
        case S::kConfiguring:
            if (from == S::kUnconfigured) return S::kInactive;
            break;
        case S::kActivating:
            if (from == S::kInactive) return S::kActive;
            break;
        case S::kDeactivating:
            if (from == S::kActive) return S::kInactive;
            break;
        case S::kCleaningUp:
            if (from == S::kInactive) return S::kUnconfigured;
            break;
        case S::kShuttingDown:
            if (from == S::kUnconfigured || from == S::kInactive || from == S::kActive) return S::kFinalized;
            break;
        default:
            break;
    }
    return std::nullopt;
}

LifecycleNode::LifecycleNode(AdapterManifest manifest, std::shared_ptr<PlatformFunction> function, Bus& bus)
    : manifest_(std::move(manifest)), function_(std::move(function)), bus_(bus), errors_(manifest_.errors) {
    if (!function_) throw Error(ErrorKind::kInvalidArgument, "node " + manifest_.component_name + ": no function");
    types_ = bus_.types();
    for (auto& [name, d] : make_type_table(manifest_.datatypes)) types_.emplace(name, d);
    auto check = [&](const std::string& path, const Datatype& datatype) {
        if (!bus_.has_event(path)) {
            throw Error(ErrorKind::kUnknownEvent, "node " + manifest_.component_name + ": unknown event " + path);
        }
        if (!(bus_.datatype_of(path) == datatype)) {
            throw Error(ErrorKind::kTypeMismatch,
                        "node " + manifest_.component_name + ": datatype of " + path + " differs from the bus");
        }
    };
    for (const auto& s : manifest_.subscriptions) check(s.source_path, s.datatype);
    for (const auto& p : manifest_.publications) check(p.source_path, p.datatype);
    for (const auto& s : manifest_.subscriptions) {
        Input input;
        input.spec = &s;
        input.value = default_value(s.datatype, types_);
        input.init_value = input.value;
        inputs_.emplace(s.source_path, std::move(input));
    }
    for (const auto& s : manifest_.subscriptions) {
        subscription_ids_.push_back(bus_.subscribe(s.source_path, [this](const std::string& path, const Retained& r) {
            if (state_ != LifecycleState::kActive) return;
            auto it = inputs_.find(path);
            if (it == inputs_.end()) return;
            it->second.value = r.value;
            it->second.last_publication = r.t_us;
        }));
    }
    for (const auto& r : manifest_.safety_reactions) safety_[r.name] = false;
}

LifecycleNode::~LifecycleNode() {
    for (auto id : subscription_ids_) bus_.unsubscribe(id);
}

std::int64_t LifecycleNode::cycle_us() const { return ms_to_us(manifest_.cycle_time); }
std::int64_t LifecycleNode::offset_us() const { return ms_to_us(manifest_.initial_offset); }

std::optional<Value> LifecycleNode::buffer(const std::string& source_path) const {
    auto it = inputs_.find(source_path);
    if (it == inputs_.end()) return std::nullopt;
    return it->second.value;
}

void LifecycleNode::seed_buffers(bool capture_init) {
    for (auto& [path, input] : inputs_) {
        auto retained = bus_.retained(path);
        if (retained) {
            input.value = retained->value;
            input.last_publication = retained->t_us;
        } else {
            input.value = default_value(input.spec->datatype, types_);
            input.last_publication.reset();
        }
        if (capture_init) input.init_value = input.value;
    }
}

void LifecycleNode::record_transition(LifecycleState from, LifecycleState transition, LifecycleState to,
                                      const std::string& error) {
    json payload = {{"from", to_string(from)}, {"transition", to_string(transition)}, {"to", to_string(to)}};
    if (!error.empty()) payload["error"] = error;
    bus_.trace().add(bus_.clock().now_us(), "transition", name(), std::move(payload));
}

LifecycleState LifecycleNode::trigger(LifecycleState transition) {
    const LifecycleState from = state_;
    const auto target = lifecycle_edge(from, transition);
    if (!target) {
        throw Error(ErrorKind::kIllegalTransition, "node " + name() + ": " + std::string(to_string(transition)) +
                                                       " is not allowed from " + std::string(to_string(from)));
    }
    state_ = transition;
    try {
        switch (transition) {
            case LifecycleState::kConfiguring:
                errors_.reset();
                for (auto& [reaction, active] : safety_) active = false;
                seed_buffers(true);
                ++init_calls_;
                function_->init();
                ++configuring_completions_;
                break;
            case LifecycleState::kActivating:
                seed_buffers(false);
                activated_at_ = bus_.clock().now_us();
                last_step_end_.reset();
                window_steps_ = 0;
                pending_alive_.clear();
                break;
            case LifecycleState::kDeactivating:
                activated_at_.reset();
                break;
            case LifecycleState::kCleaningUp:
                for (auto& [path, input] : inputs_) {
                    input.value = default_value(input.spec->datatype, types_);
                    input.last_publication.reset();
                }
                break;
            case LifecycleState::kShuttingDown:
                activated_at_.reset();
                ++terminate_calls_;
                function_->terminate();
                ++shutting_down_completions_;
                break;
            default:
                break;
        }
    } catch (const std::exception& e) {
        const LifecycleState exit =
            transition == LifecycleState::kShuttingDown ? LifecycleState::kFinalized : LifecycleState::kUnconfigured;
        state_ = exit;
        activated_at_.reset();
        record_transition(from, transition, exit, std::string("ErrorProcessing: ") + e.what());
        return state_;
    }
    state_ = *target;
    record_transition(from, transition, state_);
    return state_;
}

std::string LifecycleNode::range_error_name() const { return manifest_.function_name + "_RangeError_ErrorSts"; }

void LifecycleNode::fail_step(const std::string& message) {
    state_ = LifecycleState::kUnconfigured;
    activated_at_.reset();
    record_transition(LifecycleState::kActive, LifecycleState::kErrorProcessing, state_, message);
}

void LifecycleNode::tick(std::int64_t t_us) {
    if (state_ != LifecycleState::kActive) return;
    RunTrace& trace = bus_.trace();
    SimClock& clock = bus_.clock();
    if (manifest_.debounce_time && last_step_end_ && t_us - *last_step_end_ < ms_to_us(*manifest_.debounce_time)) {
        trace.add(clock.now_us(), "tick_skipped", name(), {{"scheduled_us", t_us}});
        return;
    }

    std::map<std::string, bool> conditions;
    for (const auto& e : manifest_.errors) conditions[e.name] = false;
    for (const auto& e : pending_alive_) conditions[e] = true;
    pending_alive_.clear();

    trace.add(clock.now_us(), "adapter_in_begin", name());
    SignalValues in;
    json timeouts = json::array();
    json range_errors = json::array();
    for (auto& [path, input] : inputs_) {
        const auto& spec = *input.spec;
        if (spec.timeout_value) {
            const std::int64_t since = input.last_publication.value_or(activated_at_.value_or(t_us));
            if (t_us - since > ms_to_us(*spec.timeout_value)) {
                timeouts.push_back(path);
                if (spec.timeout_error && conditions.count(*spec.timeout_error)) conditions[*spec.timeout_error] = true;
            }
        }
        Value value = input.value;
        if (!in_range(spec.datatype, value, types_)) {
            range_errors.push_back(path);
            if (conditions.count(range_error_name())) conditions[range_error_name()] = true;
            if (spec.range_error_action == RangeErrorAction::kDefault) {
                value = default_value(spec.datatype, types_);
            } else if (spec.range_error_action == RangeErrorAction::kInit) {
                value = input.init_value;
            }
        }
        in.emplace(path, std::move(value));
    }
    try {
        function_->set_safety_status(safety_);
        function_->set_external_inputs(in);
    } catch (const std::exception& e) {
        trace.add(clock.now_us(), "adapter_in_end", name(), {{"failed", true}});
        fail_step(std::string("setExternalInputs: ") + e.what());
        return;
    }
    json in_payload = json::object();
    if (!timeouts.empty()) in_payload["timeouts"] = timeouts;
    if (!range_errors.empty()) in_payload["range_errors"] = range_errors;
    trace.add(clock.now_us(), "adapter_in_end", name(), std::move(in_payload));

    const std::int64_t step_begin = clock.now_us();
    trace.add(step_begin, "step_begin", name());
    ++step_calls_;
    ++window_steps_;
    std::vector<std::string> checkpoints;
    try {
        function_->step();
        checkpoints = function_->checkpoints();
    } catch (const std::exception& e) {
        trace.add(clock.now_us(), "step_end", name(), {{"failed", true}});
        fail_step(std::string("step: ") + e.what());
        return;
    }
    for (const auto& c : checkpoints) trace.add(clock.now_us(), "checkpoint", name(), {{"name", c}});
    const std::int64_t step_end = clock.now_us();
    trace.add(step_end, "step_end", name());
    last_step_end_ = step_end;

    trace.add(clock.now_us(), "adapter_out_begin", name());
    try {
        const SignalValues out = function_->get_external_outputs();
        for (const auto& p : manifest_.publications) {
            auto it = out.find(p.source_path);
            if (it == out.end()) throw Error(ErrorKind::kInvalidArgument, "no output for " + p.source_path);
            bus_.publish(p.source_path, it->second, name());
        }
    } catch (const std::exception& e) {
        trace.add(clock.now_us(), "adapter_out_end", name(), {{"failed", true}});
        fail_step(std::string("getExternalOutputs: ") + e.what());
        return;
    }
    trace.add(clock.now_us(), "adapter_out_end", name());

    const WatchdogSpec& wd = manifest_.watchdog;
    for (auto v : {check_deadline(wd, step_end - step_begin, step_end), check_logical(wd, checkpoints, step_end)}) {
        if (!v) continue;
        trace.add(clock.now_us(), "watchdog_violation", name(), to_json(*v));
        if (conditions.count(v->error_name)) conditions[v->error_name] = true;
    }
    for (const auto& [error, raised] : function_->error_conditions()) {
        if (raised && conditions.count(error)) conditions[error] = true;
    }
    evaluate(std::move(conditions), t_us);
}

void LifecycleNode::evaluate(std::map<std::string, bool> conditions, std::int64_t t_us) {
    RunTrace& trace = bus_.trace();
    for (const auto& c : errors_.evaluate(conditions, t_us)) {
        trace.add(bus_.clock().now_us(), "error_change", name(),
                  {{"error", c.name}, {"from", to_string(c.from)}, {"to", to_string(c.to)}});
    }
    for (const auto& [reaction, active] : evaluate_safety(manifest_.safety_reactions, errors_.states())) {
        if (safety_[reaction] != active) {
            safety_[reaction] = active;
            trace.add(bus_.clock().now_us(), "safety_change", name(), {{"reaction", reaction}, {"active", active}});
        }
    }
}

void LifecycleNode::close_alive_window(std::int64_t t_us) {
    if (state_ != LifecycleState::kActive) {
        window_steps_ = 0;
        return;
    }
    if (auto v = check_alive(manifest_.watchdog, window_steps_, t_us)) {
        bus_.trace().add(bus_.clock().now_us(), "watchdog_violation", name(), to_json(*v));
        if (errors_.has(v->error_name)) pending_alive_.insert(v->error_name);
    }
    window_steps_ = 0;
}

std::unique_ptr<LifecycleNode> create_node(const AdapterManifest& manifest, std::shared_ptr<PlatformFunction> function,
                                           Bus& bus) {
    return std::make_unique<LifecycleNode>(manifest, std::move(function), bus);
}

LifecycleState trigger_transition(LifecycleNode& node, LifecycleState transition) { return node.trigger(transition); }

}  // namespace fnkit
