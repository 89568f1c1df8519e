// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/replay.hpp"

#include "fnkit/runtime/scheduler.hpp"
#include "fnkit/signal_catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fnkit {

using nlohmann::json;

std::int64_t SignalTrace::end_us() const {
    if (records.empty()) return 0;
    return static_cast<std::int64_t>(std::llround(records.back().t_ms * 1000.0));
}

std::string SignalTrace::to_jsonl() const {
    std::string out;
    for (const auto& r : records) {
        out += "{\"t_ms\":" + json(r.t_ms).dump() + ",\"path\":" + json(r.path).dump() +
               ",\"value\":" + r.value.dump() + "}\n";
    }
    return out;
}

SignalTrace load_trace(std::string_view text, const SignalTree* catalog) {
    SignalTrace trace;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::kJsonSyntax, where + e.what());
        }
        if (!j.is_object() || !j.contains("t_ms") || !j["t_ms"].is_number() || !j.contains("path") ||
            !j["path"].is_string() || !j.contains("value") || j.size() != 3) {
            throw Error(ErrorKind::kJsonSyntax, where + "expected {\"t_ms\",\"path\",\"value\"}");
        }
        SignalRecord record{j["t_ms"].get<double>(), j["path"].get<std::string>(), j["value"]};
        if (!std::isfinite(record.t_ms) || record.t_ms < 0) {
            throw Error(ErrorKind::kJsonSyntax, where + "t_ms must be a non-negative number");
        }
        if (!trace.records.empty() && record.t_ms < trace.records.back().t_ms) {
            throw Error(ErrorKind::kJsonSyntax, where + "timestamp " + j["t_ms"].dump() + " precedes " +
                                                    json(trace.records.back().t_ms).dump());
        }
        auto path = SignalPath::try_parse(record.path);
        if (!path) throw Error(ErrorKind::kJsonSyntax, where + "malformed signal path \"" + record.path + "\"");
        if (catalog != nullptr && catalog->find(*path) == nullptr) {
            throw Error(ErrorKind::kUnresolvedReference, where + "unknown signal path " + record.path);
        }
        trace.records.push_back(std::move(record));
    }
    return trace;
}

SignalTrace load_trace_file(const std::filesystem::path& file, const SignalTree* catalog) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return load_trace(buffer.str(), catalog);
    } catch (const Error& e) {
        throw Error(e.kind(), file.string() + ": " + e.what());
    }
}

std::size_t replay(const SignalTrace& trace, Bus& bus) {
    if (trace.records.empty()) return 0;
    return run_scheduler({}, bus, trace.end_us() + 1, &trace).publications;
}

}  // namespace fnkit
