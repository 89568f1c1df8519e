// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/bus.hpp"

namespace fnkit {

Bus::Bus(SimClock& clock, RunTrace& trace) : clock_(clock), trace_(trace) {}

void Bus::register_event(const std::string& path, const Datatype& datatype) {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(path);
    if (it != topics_.end()) {
        if (!(it->second.datatype == datatype)) {
            throw Error(ErrorKind::kConflict, "event " + path + " already registered with another datatype");
        }
        return;
    }
    topics_.emplace(path, Topic{datatype, std::nullopt, 0});
}

void Bus::register_types(const std::vector<Datatype>& declared) {
    std::lock_guard lock(mutex_);
    for (auto& [name, d] : make_type_table(declared)) types_.emplace(name, d);
}

bool Bus::has_event(const std::string& path) const {
    std::lock_guard lock(mutex_);
    return topics_.count(path) != 0;
}

const Datatype& Bus::datatype_of(const std::string& path) const {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(path);
    if (it == topics_.end()) throw Error(ErrorKind::kUnknownEvent, "unknown event " + path);
    return it->second.datatype;
}

std::vector<std::string> Bus::events() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [path, topic] : topics_) out.push_back(path);
    return out;
}

std::uint64_t Bus::publish(const std::string& path, const Value& value, const std::string& publisher) {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(path);
    if (it == topics_.end()) throw Error(ErrorKind::kUnknownEvent, "unknown event " + path);
    Value coerced;
    try {
        coerced = coerce_value(it->second.datatype, value, types_);
    } catch (const Error& e) {
        throw Error(e.kind(), "publish " + path + ": " + e.what());
    }
    Topic& topic = it->second;
    const std::int64_t t = clock_.now_us();
    topic.sequence += 1;
    topic.retained = Retained{std::move(coerced), t, topic.sequence};
    trace_.add(t, "publish", publisher,
               {{"path", path}, {"seq", topic.sequence}, {"value", topic.retained->value}});
    const Retained sample = *topic.retained;
    for (const auto& [id, entry] : subscribers_) {
        if (entry.first == path) entry.second(path, sample);
    }
    return sample.sequence;
}

std::optional<Retained> Bus::retained(const std::string& path) const {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(path);
    if (it == topics_.end()) throw Error(ErrorKind::kUnknownEvent, "unknown event " + path);
    return it->second.retained;
}

std::uint64_t Bus::sequence(const std::string& path) const {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(path);
    if (it == topics_.end()) throw Error(ErrorKind::kUnknownEvent, "unknown event " + path);
    return it->second.sequence;
}

std::size_t Bus::subscribe(const std::string& path, Subscriber callback) {
    std::lock_guard lock(mutex_);
    if (topics_.count(path) == 0) throw Error(ErrorKind::kUnknownEvent, "unknown event " + path);
    const std::size_t id = next_subscriber_++;
    subscribers_.emplace(id, std::make_pair(path, std::move(callback)));
    return id;
}

void Bus::unsubscribe(std::size_t id) {
    std::lock_guard lock(mutex_);
    subscribers_.erase(id);
}

void register_integration_events(Bus& bus, const IntegrationModel& model) {
    bus.register_types(model.datatypes);
    for (const auto& component : model.components) {
        for (const auto& f : component.functions) bus.register_types(f.declared_datatypes());
        for (const auto& service : component.service_interfaces) {
            for (const auto& event : service.events) bus.register_event(event.source_path, event.datatype);
        }
    }
}

}  // namespace fnkit
