// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file pipeline.hpp
/// @brief End-to-end orchestration shared by the command line and the tests:
///        build a bus and nodes from adapter manifests, drive the lifecycle,
///        replay a trace, and the direct-call baseline equivalent.

#pragma once

#include "fnkit/adapter_codegen.hpp"
#include "fnkit/baseline.hpp"
#include "fnkit/replay.hpp"
#include "fnkit/runtime/clock.hpp"
#include "fnkit/runtime/run_trace.hpp"
#include "fnkit/runtime/scheduler.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

class SignalTree;

using FunctionFactory = std::function<std::shared_ptr<PlatformFunction>(const std::string& function_name)>;

struct RunOptions {
    ClockMode clock = ClockMode::kVirtual;
    /// Simulated span; 0 means "up to and including the last stimulus".
    std::int64_t duration_us = 0;
    FunctionFactory factory;  // defaults to the demo functions
};

struct RunOutcome {
    RunTrace trace;
    SchedulerResult scheduler;
    std::map<std::string, double> cycle_time_ms;  // node -> cycle
};

/// Registers every manifest event on a fresh bus, creates one node per
/// manifest, runs Configuring and Activating, the schedule with `stimuli`,
/// then Deactivating and ShuttingDown.
RunOutcome run_application(const std::vector<AdapterManifest>& manifests, const SignalTrace& stimuli,
                           const RunOptions& options);

/// Minimal function model (interfaces and scheduling) recovered from a
/// manifest, enough for the baseline harness.
FunctionModel function_model_from_manifest(const AdapterManifest& manifest);

/// Baseline harness over the same manifests and functions.
RunTrace run_baseline_application(const std::vector<AdapterManifest>& manifests, const SignalTrace& stimuli,
                                  const RunOptions& options);

enum class ModelKind { kFunction, kIntegration };
std::string_view to_string(ModelKind kind);

/// Integration documents carry MetaInformation; everything else is read as a
/// Function document.
ModelKind detect_model_kind(const nlohmann::json& document);

/// Full check of a model document: JSON syntax, structure, semantics and,
/// for function models with a catalog, catalog conformance. Never throws
/// for document problems; they come back as findings.
ValidationReport check_model_text(std::string_view text, std::optional<ModelKind> kind = std::nullopt,
                                  const SignalTree* catalog = nullptr);

std::int64_t effective_duration_us(const SignalTrace& stimuli, std::int64_t requested_us);

}  // namespace fnkit
