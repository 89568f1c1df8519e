// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file run_trace.hpp
/// @brief Ordered execution record of a simulation run.
///
/// Exported as JSON lines: {"t_us":…,"kind":…,"node":…,"payload":…}.
/// Record kinds: transition, publish, step_begin, step_end, adapter_in_begin,
/// adapter_in_end, adapter_out_begin, adapter_out_end, checkpoint,
/// error_change, safety_change, watchdog_violation, tick_skipped.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

struct TraceRecord {
    std::int64_t t_us = 0;
    std::string kind;
    std::string node;
    nlohmann::json payload = nlohmann::json::object();

    bool operator==(const TraceRecord&) const = default;
};

class RunTrace {
public:
    RunTrace() = default;
    RunTrace(const RunTrace& other);
    RunTrace& operator=(const RunTrace& other);

    /// Appends a record; safe to call from several threads.
    void add(std::int64_t t_us, std::string kind, std::string node, nlohmann::json payload = nlohmann::json::object());

    const std::vector<TraceRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    std::size_t count(std::string_view kind, std::string_view node = {}) const;

    std::string to_jsonl() const;
    /// Throws Error{kJsonSyntax} naming the offending line.
    static RunTrace from_jsonl(std::string_view text);

    void write(const std::filesystem::path& file) const;
    static RunTrace read(const std::filesystem::path& file);

    bool operator==(const RunTrace& other) const { return records_ == other.records_; }

private:
    std::vector<TraceRecord> records_;
    mutable std::mutex mutex_;
};

std::string to_jsonl_line(const TraceRecord& record);

}  // namespace fnkit
