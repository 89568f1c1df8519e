// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fnkit {

enum class Severity { kWarning, kError };

const char* to_string(Severity severity);

/// One validation result. `path` is a dotted/indexed location inside the
/// document (e.g. `InterfaceData[2].Datatype.Min`), `code` a stable short tag.
struct Finding {
    Severity severity = Severity::kError;
    std::string path;
    std::string code;
    std::string message;

    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool valid() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool has_code(const std::string& code) const;

    void error(std::string path, std::string code, std::string message);
    void warning(std::string path, std::string code, std::string message);
    void merge(const ValidationReport& other);
};

enum class ErrorKind {
    kIo,
    kJsonSyntax,
    kSchema,
    kUnresolvedReference,
    kValidation,
    kDuplicate,
    kConflict,
    kIllegalIdentifier,
    kUnassignedFunction,
    kUnknownComponent,
    kTemplate,
    kIllegalTransition,
    kUnknownEvent,
    kTypeMismatch,
    kUnknownError,
    kUnbalancedTrace,
    kInvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Exception type used across the toolchain. Parse and validation failures
/// carry the full finding list so callers can print every problem at once.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::vector<Finding> findings = {})
        : std::runtime_error(message), kind_(kind), findings_(std::move(findings)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<Finding>& findings() const noexcept { return findings_; }

private:
    ErrorKind kind_;
    std::vector<Finding> findings_;
};

}  // namespace fnkit
