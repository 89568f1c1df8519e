// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file replay.hpp
/// @brief Recorded signal traces and their replay onto the bus.
///
/// Trace files are JSON lines: {"t_ms": 12.5, "path": "Vehicle.Speed", "value": 87.2}

#pragma once

#include "fnkit/runtime/value.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

class SignalTree;
class Bus;

struct SignalRecord {
    double t_ms = 0.0;
    std::string path;
    Value value;

    bool operator==(const SignalRecord&) const = default;
};

struct SignalTrace {
    std::vector<SignalRecord> records;

    /// Timestamp of the last record in microseconds (0 when empty).
    std::int64_t end_us() const;
    std::string to_jsonl() const;
    bool operator==(const SignalTrace&) const = default;
};

/// Throws Error{kJsonSyntax} naming the first malformed or out-of-order
/// line, and Error{kUnresolvedReference} naming an unknown path when a
/// catalog is given.
SignalTrace load_trace(std::string_view text, const SignalTree* catalog = nullptr);
SignalTrace load_trace_file(const std::filesystem::path& file, const SignalTree* catalog = nullptr);

/// Publishes every record at its timestamp (the clock jumps in virtual mode
/// and sleeps in wall mode). Returns the number of publications.
std::size_t replay(const SignalTrace& trace, Bus& bus);

}  // namespace fnkit
