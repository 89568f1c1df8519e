// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file integration_model.hpp
/// @brief Platform-bound integration model and the transformation from
///        function models, a platform descriptor and a component topology.

#pragma once

#include "fnkit/error.hpp"
#include "fnkit/function_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

inline constexpr const char* kToolVersion = "fnkit 1.0.0";

enum class Serialization { kBinaryLe, kJsonLines };
std::string_view to_string(Serialization s);
std::optional<Serialization> parse_serialization(std::string_view text);

struct PlatformDescriptor {
    std::string platform_name = "sim-middleware";
    Serialization serialization = Serialization::kJsonLines;
    std::uint64_t service_grouping_depth = 3;
    std::int64_t id_base = 0x1000;
    std::string transport_label = "sim";

    bool operator==(const PlatformDescriptor&) const = default;
};

/// {"PlatformName", "Serialization", "ServiceGroupingDepth", "IdBase", "TransportLabel"}
PlatformDescriptor parse_platform(std::string_view json_text);

struct TopologyComponent {
    std::string name;
    std::string executable_name;
    std::vector<std::string> function_group_modes;
    std::vector<std::string> functions;

    bool operator==(const TopologyComponent&) const = default;
};

/// Assignment of functions to components and of components to executables.
struct ComponentTopology {
    std::string application_name;
    std::string application_description;
    std::vector<TopologyComponent> components;

    bool operator==(const ComponentTopology&) const = default;
};

/// {"Application": {"Name", "Description"}, "Components": [{"Name",
/// "ExecutableName", "FunctionGroupModes"?, "Functions"}]}
ComponentTopology parse_topology(std::string_view json_text);

enum class ServiceDirection { kProvided, kRequired };
std::string_view to_string(ServiceDirection d);

struct ServiceEvent {
    std::string name;
    std::int64_t event_id = 0;
    Datatype datatype;
    std::string source_path;

    bool operator==(const ServiceEvent&) const = default;
};

struct ServiceInterface {
    std::string name;
    std::int64_t service_id = 0;
    ServiceDirection direction = ServiceDirection::kProvided;
    std::vector<ServiceEvent> events;
    std::vector<NamedRecord> methods;

    const ServiceEvent* find_event(std::string_view event_name) const;

    bool operator==(const ServiceInterface&) const = default;
};

struct IntegrationComponent {
    std::string name;
    std::string executable_name;
    std::vector<std::string> function_group_modes;
    std::vector<FunctionModel> functions;
    std::vector<Parameter> parameters;
    std::vector<ServiceInterface> service_interfaces;

    bool operator==(const IntegrationComponent&) const = default;
};

struct SourceDigest {
    std::string function;
    std::string digest;

    bool operator==(const SourceDigest&) const = default;
};

struct MetaInformation {
    std::string tool_version = kToolVersion;
    std::string created_at;
    std::vector<SourceDigest> source_function_model_digests;
    std::string platform_name;
    Serialization serialization = Serialization::kJsonLines;
    std::string transport_label;

    bool operator==(const MetaInformation&) const = default;
};

struct ApplicationInformation {
    std::string name;
    std::string description;
    /// Consumed paths with no provider among the model's functions. They are
    /// fed from outside the application (signal replay in the simulator).
    std::vector<std::string> external_signals;

    bool operator==(const ApplicationInformation&) const = default;
};

/// A resolved event binding: which component exchanges which signal over
/// which service event.
struct EventRef {
    std::string service;
    std::string event;
    std::string source_path;
    ServiceDirection direction = ServiceDirection::kProvided;
    const ServiceEvent* definition = nullptr;
};

struct IntegrationModel {
    MetaInformation meta;
    ApplicationInformation application;
    std::vector<IntegrationComponent> components;
    std::vector<Datatype> datatypes;

    const IntegrationComponent* find_component(std::string_view name) const;
    /// Every event binding of a component in service/event name order.
    std::vector<EventRef> events_of(const IntegrationComponent& component) const;

    bool operator==(const IntegrationModel&) const = default;
};

struct TransformOptions {
    /// Timestamp written to MetaInformation.CreatedAt; see default_created_at().
    std::string created_at;
};

/// --created-at style override, else SOURCE_DATE_EPOCH, else the epoch.
std::string default_created_at();

/// Throws Error{kUnassignedFunction} for a function absent from the topology,
/// Error{kConflict} for two providers of one path or a function assigned twice,
/// Error{kUnknownComponent} when the topology names an unknown function and
/// Error{kValidation} when an input model is invalid.
IntegrationModel transform(const std::vector<FunctionModel>& functions, const PlatformDescriptor& platform,
                           const ComponentTopology& topology, const TransformOptions& options = {});

/// Service name and event name for a signal path at a grouping depth. The
/// service takes the first min(depth, segments-1) segments.
std::pair<std::string, std::string> group_signal_path(std::string_view path, std::uint64_t depth);

ValidationReport validate_integration(const IntegrationModel& model);

struct EntityCounts {
    std::size_t executables = 0;
    std::size_t services = 0;
    std::size_t events = 0;

    bool operator==(const EntityCounts&) const = default;
};

/// Unique executable names, unique service names and unique (service, event)
/// pairs.
EntityCounts count_entities(const IntegrationModel& model);

IntegrationModel decode_integration_model(const nlohmann::json& document);
nlohmann::json to_json(const IntegrationModel& model);
/// Parse, decode and validate; throws like parse_function_model.
IntegrationModel parse_integration_model(std::string_view json_text);
std::string serialize_integration_model(const IntegrationModel& model);

std::string emit_integration_schema();

/// "sha256:<hex>" of the canonical serialization.
std::string function_model_digest(const FunctionModel& model);
std::string sha256_hex(std::string_view data);

}  // namespace fnkit
