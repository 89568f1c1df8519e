// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the test suites.

#pragma once

#include "fnkit/adapter_codegen.hpp"
#include "fnkit/function_model.hpp"
#include "fnkit/integration_model.hpp"
#include "fnkit/runtime/platform_function.hpp"
#include "fnkit/signal_catalog.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fnkit::test {

std::filesystem::path source_dir();
std::string read_text(const std::filesystem::path& file);

/// Demo inputs as compiled into the library.
const std::string& demo_text(const std::string& name);
FunctionModel demo_function(const std::string& file);
IntegrationModel demo_integration();
std::vector<AdapterManifest> demo_manifests();
SignalTree demo_catalog();

/// Smallest valid function document: one float32 consumer Vehicle.Speed and
/// one uint8 provider Vehicle.ADAS.Probe.Output, 100 ms cycle.
nlohmann::json minimal_function_json(const std::string& name = "Probe");

/// Hand-built manifest for runtime tests. Inputs and outputs are float64
/// in [-1000, 1000] on the given paths.
AdapterManifest simple_manifest(const std::string& component, double cycle_ms, std::int64_t priority,
                                const std::vector<std::string>& inputs = {},
                                const std::vector<std::string>& outputs = {});

/// Function with hooks around every call; records what it was given.
class ProbeFunction : public PlatformFunction {
public:
    void init() override {
        ++inits;
        initialized = true;
    }
    void step() override {
        if (!initialized) return;
        ++steps;
        if (on_step) on_step(*this);
    }
    void terminate() override { ++terminates; }
    void set_external_inputs(const SignalValues& in) override {
        inputs = in;
        input_history.push_back(in);
    }
    SignalValues get_external_outputs() const override { return outputs; }
    std::map<std::string, bool> error_conditions() const override { return conditions; }
    std::vector<std::string> checkpoints() const override { return checkpoint_list; }
    void set_safety_status(const std::map<std::string, bool>& status) override { safety = status; }

    int inits = 0;
    int steps = 0;
    int terminates = 0;
    bool initialized = false;
    SignalValues inputs;
    std::vector<SignalValues> input_history;
    SignalValues outputs;
    std::map<std::string, bool> conditions;
    std::vector<std::string> checkpoint_list;
    std::map<std::string, bool> safety;
    std::function<void(ProbeFunction&)> on_step;
};

}  // namespace fnkit::test
