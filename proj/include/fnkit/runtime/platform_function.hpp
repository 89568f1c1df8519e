// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file platform_function.hpp
/// @brief The middleware-agnostic function contract: init, step, terminate
///        plus global-variable accessors keyed by signal path.

#pragma once

#include "fnkit/runtime/value.hpp"

#include <map>
#include <string>
#include <vector>

namespace fnkit {

using SignalValues = std::map<std::string, Value>;

class PlatformFunction {
public:
    virtual ~PlatformFunction() = default;

    virtual void init() = 0;
    /// Must have no effect before init().
    virtual void step() = 0;
    virtual void terminate() = 0;

    /// Copies consumer values into the function's globals.
    virtual void set_external_inputs(const SignalValues& inputs) = 0;
    /// Provider values from the function's globals.
    virtual SignalValues get_external_outputs() const = 0;

    /// Conditions of the function's own errors after the last step.
    virtual std::map<std::string, bool> error_conditions() const { return {}; }
    /// Checkpoints reached during the last step, in order.
    virtual std::vector<std::string> checkpoints() const { return {}; }
    /// Current safety reaction statuses, delivered before each step.
    virtual void set_safety_status(const std::map<std::string, bool>& /*status*/) {}
};

}  // namespace fnkit
