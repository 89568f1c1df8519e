// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file baseline.hpp
/// @brief Direct-call reference harness: the same functions and tick times
///        as the simulator, but no bus, no lifecycle and no adapter.
///
/// Inputs come from a plain latest-value map fed by the stimulus trace.
/// Output values are normalized with the interface datatype (as a real
/// platform would store them) and recorded as publish records.

#pragma once

#include "fnkit/function_model.hpp"
#include "fnkit/replay.hpp"
#include "fnkit/runtime/platform_function.hpp"
#include "fnkit/runtime/run_trace.hpp"

#include <memory>
#include <vector>

namespace fnkit {

struct BaselineFunction {
    FunctionModel model;
    std::shared_ptr<PlatformFunction> function;
};

/// Calls init on every function, runs the cyclic schedule for `duration_us`
/// and calls terminate. Each function ticks at InitialOffset + k*CycleTime;
/// stimuli at the same instant are applied first, then functions by
/// ascending priority and name. `named_types` adds declarations not
/// reachable from the models.
RunTrace run_baseline(const std::vector<BaselineFunction>& functions, const SignalTrace& stimuli,
                      std::int64_t duration_us, const std::vector<Datatype>& named_types = {});

}  // namespace fnkit
