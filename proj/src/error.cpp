// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/error.hpp"

#include <algorithm>

namespace fnkit {

const char* to_string(Severity severity) {
    return severity == Severity::kError ? "error" : "warning";
}

bool ValidationReport::valid() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
        return f.severity == Severity::kError;
    }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

bool ValidationReport::has_code(const std::string& code) const {
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

void ValidationReport::error(std::string path, std::string code, std::string message) {
    findings.push_back({Severity::kError, std::move(path), std::move(code), std::move(message)});
}

void ValidationReport::warning(std::string path, std::string code, std::string message) {
    findings.push_back({Severity::kWarning, std::move(path), std::move(code), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
    findings.insert(findings.end(), other.findings.begin(), other.findings.end());
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kIo: return "io";
        case ErrorKind::kJsonSyntax: return "json-syntax";
        case ErrorKind::kSchema: return "schema";
        case ErrorKind::kUnresolvedReference: return "unresolved-reference";
        case ErrorKind::kValidation: return "validation";
        case ErrorKind::kDuplicate: return "duplicate";
        case ErrorKind::kConflict: return "conflict";
        case ErrorKind::kIllegalIdentifier: return "illegal-identifier";
        case ErrorKind::kUnassignedFunction: return "unassigned-function";
        case ErrorKind::kUnknownComponent: return "unknown-component";
        case ErrorKind::kTemplate: return "template";
        case ErrorKind::kIllegalTransition: return "illegal-transition";
        case ErrorKind::kUnknownEvent: return "unknown-event";
        case ErrorKind::kTypeMismatch: return "type-mismatch";
        case ErrorKind::kUnknownError: return "unknown-error";
        case ErrorKind::kUnbalancedTrace: return "unbalanced-trace";
        case ErrorKind::kInvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace fnkit
