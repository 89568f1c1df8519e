// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file bus.hpp
/// @brief Latest-value publish/subscribe topics keyed by signal path.

#pragma once

#include "fnkit/integration_model.hpp"
#include "fnkit/runtime/clock.hpp"
#include "fnkit/runtime/run_trace.hpp"
#include "fnkit/runtime/value.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace fnkit {

struct Retained {
    Value value;
    std::int64_t t_us = 0;
    std::uint64_t sequence = 0;
};

using Subscriber = std::function<void(const std::string& path, const Retained& sample)>;

class Bus {
public:
    Bus(SimClock& clock, RunTrace& trace);

    /// Registering an existing path again with the same datatype is a no-op;
    /// a different datatype throws Error{kConflict}.
    void register_event(const std::string& path, const Datatype& datatype);
    void register_types(const std::vector<Datatype>& declared);

    bool has_event(const std::string& path) const;
    /// Throws Error{kUnknownEvent}.
    const Datatype& datatype_of(const std::string& path) const;
    std::vector<std::string> events() const;
    const TypeTable& types() const { return types_; }

    /// Coerces `value` to the event datatype, retains it stamped with the
    /// current clock time and notifies subscribers synchronously. Returns the
    /// new per-topic sequence number. Throws Error{kUnknownEvent} or
    /// Error{kTypeMismatch}; a rejected value leaves the topic untouched.
    std::uint64_t publish(const std::string& path, const Value& value, const std::string& publisher = "");

    std::optional<Retained> retained(const std::string& path) const;
    /// Publications so far on the topic (0 when none).
    std::uint64_t sequence(const std::string& path) const;

    std::size_t subscribe(const std::string& path, Subscriber callback);
    void unsubscribe(std::size_t id);

    SimClock& clock() { return clock_; }
    RunTrace& trace() { return trace_; }

private:
    struct Topic {
        Datatype datatype;
        std::optional<Retained> retained;
        std::uint64_t sequence = 0;
    };

    SimClock& clock_;
    RunTrace& trace_;
    TypeTable types_;
    std::map<std::string, Topic> topics_;
    std::map<std::size_t, std::pair<std::string, Subscriber>> subscribers_;
    std::size_t next_subscriber_ = 1;
    mutable std::recursive_mutex mutex_;
};

/// Registers every event and named datatype of the model.
void register_integration_events(Bus& bus, const IntegrationModel& model);

}  // namespace fnkit
