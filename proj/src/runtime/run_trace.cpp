// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/run_trace.hpp"

#include "fnkit/error.hpp"

#include <fstream>
#include <sstream>

namespace fnkit {

using nlohmann::json;

RunTrace::RunTrace(const RunTrace& other) {
    std::lock_guard lock(other.mutex_);
    records_ = other.records_;
}

RunTrace& RunTrace::operator=(const RunTrace& other) {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        records_ = other.records_;
    }
    return *this;
}

void RunTrace::add(std::int64_t t_us, std::string kind, std::string node, json payload) {
    std::lock_guard lock(mutex_);
    records_.push_back(TraceRecord{t_us, std::move(kind), std::move(node), std::move(payload)});
}

std::size_t RunTrace::count(std::string_view kind, std::string_view node) const {
    std::size_t n = 0;
    for (const auto& r : records_) {
        if (r.kind == kind && (node.empty() || r.node == node)) ++n;
    }
    return n;
}

std::string to_jsonl_line(const TraceRecord& record) {
    std::string line = "{\"t_us\":" + std::to_string(record.t_us);
    line += ",\"kind\":" + json(record.kind).dump();
    line += ",\"node\":" + json(record.node).dump();
    line += ",\"payload\":" + record.payload.dump() + "}";
    return line;
}

std::string RunTrace::to_jsonl() const {
    std::string out;
    for (const auto& r : records_) {
        out += to_jsonl_line(r);
        out += '\n';
    }
    return out;
}

RunTrace RunTrace::from_jsonl(std::string_view text) {
    RunTrace trace;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const std::string where = "line " + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::kJsonSyntax, where + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("t_us") || !j["t_us"].is_number_integer() || !j.contains("kind") ||
            !j["kind"].is_string() || !j.contains("node") || !j["node"].is_string()) {
            throw Error(ErrorKind::kJsonSyntax, where + ": expected {\"t_us\",\"kind\",\"node\",\"payload\"}");
        }
        trace.records_.push_back(TraceRecord{j["t_us"].get<std::int64_t>(), j["kind"].get<std::string>(),
                                             j["node"].get<std::string>(),
                                             j.contains("payload") ? j["payload"] : json::object()});
    }
    return trace;
}

void RunTrace::write(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
    out << to_jsonl();
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
}

RunTrace RunTrace::read(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_jsonl(buffer.str());
}

}  // namespace fnkit
