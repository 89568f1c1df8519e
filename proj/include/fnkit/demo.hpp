// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file demo.hpp
/// @brief Bundled demo application: two platform functions, their models and
///        a deterministic 60 s input trace.
///
/// The control laws are small saturated-arithmetic stand-ins. They exist to
/// exercise the interfaces, not to drive a car.

#pragma once

#include "fnkit/runtime/platform_function.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fnkit {

/// 50 ms core controller. Status: 0 off, 1 standby, 2 speed control,
/// 3 distance control, 4 curve limited.
class CoreAccFunction : public PlatformFunction {
public:
    void init() override;
    void step() override;
    void terminate() override;
    void set_external_inputs(const SignalValues& inputs) override;
    SignalValues get_external_outputs() const override;
    std::map<std::string, bool> error_conditions() const override;

    bool initialized() const { return initialized_; }

private:
    bool initialized_ = false;
    // Inputs.
    float speed_kph_ = 0.0F;
    float longitudinal_ = 0.0F;
    float set_speed_kph_ = 0.0F;
    bool engaged_ = false;
    float lead_distance_ = 250.0F;
    float curvature_ = 0.0F;
    float eco_request_ = 0.0F;
    // Outputs and state.
    float acceleration_ = 0.0F;
    std::int64_t status_ = 0;
    bool implausible_ = false;
};

/// 500 ms eco controller. Status: 0 inactive, 1 cruising, 2 grade
/// compensation.
class EcoMpcFunction : public PlatformFunction {
public:
    void init() override;
    void step() override;
    void terminate() override;
    void set_external_inputs(const SignalValues& inputs) override;
    SignalValues get_external_outputs() const override;
    std::vector<std::string> checkpoints() const override { return checkpoints_; }

    bool initialized() const { return initialized_; }

private:
    bool initialized_ = false;
    float speed_kph_ = 0.0F;
    double altitude_ = 0.0;
    std::array<float, 5> profile_{};
    float acceleration_ = 0.0F;
    std::int64_t status_ = 0;
    std::vector<std::string> checkpoints_;
};

/// "CoreAcc" or "EcoMpc"; throws Error{kInvalidArgument} otherwise.
std::shared_ptr<PlatformFunction> make_demo_function(const std::string& function_name);

/// Bundled demo inputs by file name: core_acc.json, eco_mpc.json,
/// topology.json, platform.json, catalog.json.
const std::map<std::string, std::string>& demo_fixtures();

/// The 60 s demo signal trace as JSON lines.
std::string demo_trace_jsonl();

/// Output events compared for behavior equivalence.
const std::vector<std::string>& demo_equivalence_events();

}  // namespace fnkit
