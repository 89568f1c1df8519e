// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file adapter_codegen.hpp
/// @brief Function adapter generation: adapter source text for the simulated
///        middleware plus the machine-readable manifest the runtime consumes.

#pragma once

#include "fnkit/error.hpp"
#include "fnkit/function_model.hpp"
#include "fnkit/integration_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fnkit {

struct ManifestSubscription {
    std::string service;
    std::string event;
    std::string source_path;
    std::string buffer_name;
    Datatype datatype;
    std::optional<double> timeout_value;
    std::optional<std::string> timeout_error;
    std::optional<RangeErrorAction> range_error_action;

    bool operator==(const ManifestSubscription&) const = default;
};

struct ManifestPublication {
    std::string service;
    std::string event;
    std::string source_path;
    std::string buffer_name;
    Datatype datatype;

    bool operator==(const ManifestPublication&) const = default;
};

struct AdapterManifest {
    std::string component_name;
    std::string executable_name;
    std::string function_name;
    double cycle_time = 0.0;
    double initial_offset = 0.0;
    std::int64_t priority = 0;
    std::optional<double> debounce_time;
    std::vector<ManifestSubscription> subscriptions;
    std::vector<ManifestPublication> publications;
    WatchdogSpec watchdog;
    std::vector<ErrorSpec> errors;
    std::vector<SafetyReaction> safety_reactions;
    std::vector<Datatype> datatypes;

    /// The fixed lifecycle contract.
    static nlohmann::json lifecycle_bindings();

    bool operator==(const AdapterManifest&) const = default;
};

nlohmann::json to_json(const AdapterManifest& manifest);
AdapterManifest manifest_from_json(const nlohmann::json& j);
AdapterManifest parse_manifest(std::string_view json_text);

enum class FileOrigin { kGenerated, kManualSlot };
std::string_view to_string(FileOrigin origin);

struct GeneratedFile {
    std::string path;
    std::string text;
    FileOrigin origin = FileOrigin::kGenerated;

    bool operator==(const GeneratedFile&) const = default;
};

struct GeneratedArtifact {
    std::vector<GeneratedFile> files;
    AdapterManifest manifest;
};

/// Template file name -> template text.
using TemplateSet = std::map<std::string, std::string>;

/// Templates compiled into the library (copies of templates/sim).
const TemplateSet& builtin_templates();
/// Every regular file in `dir`; throws Error{kIo} when unreadable.
TemplateSet load_templates(const std::filesystem::path& dir);

/// Throws Error{kUnknownComponent} for an unknown component, Error{kTemplate}
/// for rendering failures and Error{kInvalidArgument} unless the component
/// holds exactly one function.
GeneratedArtifact generate_adapter(const IntegrationModel& model, const std::string& component,
                                   const TemplateSet& templates);

/// Manifest only (no templates needed).
AdapterManifest build_manifest(const IntegrationModel& model, const std::string& component);

/// Marker lines delimiting hand-written regions:
///   // fnkit:manual-begin <id>
///   // fnkit:manual-end <id>
inline constexpr const char* kManualBegin = "// fnkit:manual-begin ";
inline constexpr const char* kManualEnd = "// fnkit:manual-end ";

/// Manual slot id -> slot body (lines between the markers, newline-terminated).
/// Throws Error{kTemplate} for unbalanced or nested markers.
std::map<std::string, std::string> extract_manual_slots(const std::string& text);

/// Replaces slot bodies in `fresh` with the bodies found in `previous`.
std::string preserve_manual_slots(const std::string& fresh, const std::string& previous);

/// Writes artifact files and `adapter_manifest.json` under `out_dir`, keeping
/// any manual slot content already present in files being overwritten.
void write_artifact(GeneratedArtifact& artifact, const std::filesystem::path& out_dir);

struct LocReport {
    std::size_t generated_loc = 0;
    std::size_t manual_loc = 0;
    double fraction_generated = 1.0;
};

/// Counts non-blank, non-comment lines; lines inside manual slots (and files
/// of origin manual_slot) count as manual.
LocReport loc_report(const GeneratedArtifact& artifact);
/// generated / (generated + manual); 1.0 when both are zero.
double loc_fraction(std::size_t generated, std::size_t manual);

/// Event lists recovered from `// fnkit:subscribe <service>.<event>` and
/// `// fnkit:publish <service>.<event>` markers in the generated sources.
struct MarkerEvents {
    std::vector<std::string> subscriptions;
    std::vector<std::string> publications;
};
MarkerEvents scan_event_markers(const GeneratedArtifact& artifact);

/// C identifier for a signal path: dots become underscores.
std::string buffer_name_for(const std::string& source_path);

}  // namespace fnkit
