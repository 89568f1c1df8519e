// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file function_model.hpp
/// @brief Platform-agnostic description of one automotive software function.
///
/// A Function model lists the function's data interfaces (named by VSS-style
/// signal paths), its scheduling and supervision needs, parameters, errors and
/// safety reactions. It carries no middleware information; the integration
/// model adds that per target platform.
///
/// JSON member names follow the established PascalCase layout:
///
///   {
///     "Name": "CoreAcc",
///     "Description": "...",
///     "InterfaceData": [ { "Name": "Vehicle.Speed", "Role": "Consumer", ... } ],
///     "SchedulingInfo": { "RunType": "cyclic", "CycleTime": 50, ... },
///     "ErrorList": [ ... ], "SafetyReactionList": [ ... ], ...
///   }
///
/// All durations are milliseconds.

#pragma once

#include "fnkit/error.hpp"
#include "fnkit/indirect.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace fnkit {

enum class AsilLevel { kQM, kA, kB, kC, kD };

/// QM < A < B < C < D.
inline bool operator<(AsilLevel a, AsilLevel b) { return static_cast<int>(a) < static_cast<int>(b); }
std::string_view to_string(AsilLevel level);
std::optional<AsilLevel> parse_asil(std::string_view text);

enum class NumericBase { kUint8, kUint16, kUint32, kUint64, kInt8, kInt16, kInt32, kInt64, kFloat32, kFloat64 };

std::string_view to_string(NumericBase base);
std::optional<NumericBase> parse_numeric_base(std::string_view text);
bool is_integral(NumericBase base);
/// Lowest and highest value representable in `base`, as doubles.
double base_lowest(NumericBase base);
double base_highest(NumericBase base);

struct Datatype;

struct NumericalDatatype {
    NumericBase base = NumericBase::kFloat64;
    double min = 0.0;
    double max = 0.0;
    std::string unit;
    double default_value = 0.0;

    bool operator==(const NumericalDatatype&) const = default;
};

struct TextDatatype {
    std::uint64_t max_length = 0;
    std::string default_value;

    bool operator==(const TextDatatype&) const = default;
};

struct BooleanDatatype {
    bool default_value = false;

    bool operator==(const BooleanDatatype&) const = default;
};

struct StructField {
    std::string name;
    Indirect<Datatype> datatype;

    bool operator==(const StructField&) const = default;
};

struct StructDatatype {
    std::optional<std::string> type_name;
    std::vector<StructField> fields;

    bool operator==(const StructDatatype&) const = default;
};

struct ArrayDatatype {
    std::optional<std::string> type_name;
    Indirect<Datatype> element;
    std::uint64_t length = 1;

    bool operator==(const ArrayDatatype&) const = default;
};

struct EnumerationLiteral {
    std::string name;
    std::int64_t value = 0;

    bool operator==(const EnumerationLiteral&) const = default;
};

struct EnumerationDatatype {
    std::optional<std::string> type_name;
    std::vector<EnumerationLiteral> literals;

    bool operator==(const EnumerationDatatype&) const = default;
};

struct TypeReference {
    std::string type_name;

    bool operator==(const TypeReference&) const = default;
};

struct Datatype {
    using Variant = std::variant<NumericalDatatype, TextDatatype, BooleanDatatype, StructDatatype, ArrayDatatype,
                                 EnumerationDatatype, TypeReference>;
    Variant v;

    Datatype() = default;
    template <typename T>
        requires(!std::is_same_v<std::decay_t<T>, Datatype>)
    Datatype(T alt) : v(std::move(alt)) {}  // NOLINT(google-explicit-constructor)

    template <typename T>
    bool is() const { return std::holds_alternative<T>(v); }
    template <typename T>
    const T& as() const { return std::get<T>(v); }
    template <typename T>
    const T* get_if() const { return std::get_if<T>(&v); }

    /// Name under which this datatype is declared, if it is a named
    /// struct/array/enumeration.
    std::optional<std::string> declared_name() const;
    /// JSON "Category" tag.
    std::string_view category() const;

    bool operator==(const Datatype&) const = default;
};

enum class InterfaceRole { kConsumer, kProvider };
std::string_view to_string(InterfaceRole role);

enum class RangeErrorAction { kDefault, kInit };
std::string_view to_string(RangeErrorAction action);

struct InterfaceDatatype {
    std::string name;
    std::string description;
    InterfaceRole role = InterfaceRole::kConsumer;
    std::string kind;
    Datatype datatype;
    std::optional<RangeErrorAction> range_error_action;
    std::optional<double> timeout_value;
    std::optional<std::string> timeout_error;
    AsilLevel asil = AsilLevel::kQM;

    bool operator==(const InterfaceDatatype&) const = default;
};

enum class ParameterAttribute { kNA, kNormal, kLearningParameter };
std::string_view to_string(ParameterAttribute attribute);

struct Parameter {
    std::string name;
    std::string description;
    AsilLevel asil = AsilLevel::kQM;
    Datatype datatype;
    std::optional<RangeErrorAction> range_error_action;
    ParameterAttribute attribute = ParameterAttribute::kNA;

    bool operator==(const Parameter&) const = default;
};

struct ErrorSpec {
    std::string name;
    Datatype datatype;
    double maturation_time = 0.0;
    std::string severity;
    double reset_time = 0.0;
    std::string reset_condition;
    std::string description;
    std::vector<std::string> dependencies;

    bool operator==(const ErrorSpec&) const = default;
};

struct SafetyReaction {
    std::string name;
    Datatype datatype;
    std::vector<std::string> error_list;
    std::string description;

    bool operator==(const SafetyReaction&) const = default;
};

/// Bit set over {Alive, Deadline, Logical}; empty means "None".
struct SupervisionType {
    bool alive = false;
    bool deadline = false;
    bool logical = false;

    bool none() const { return !alive && !deadline && !logical; }
    std::string to_string() const;
    static std::optional<SupervisionType> parse(std::string_view text);
    /// Every accepted textual form, canonical order.
    static const std::vector<std::string>& literals();

    bool operator==(const SupervisionType&) const = default;
};

struct AliveLimits {
    std::uint64_t min_indications = 0;
    std::uint64_t max_indications = 0;
    double reference_window = 0.0;
    std::string error_name;

    bool operator==(const AliveLimits&) const = default;
};

struct DeadlineLimits {
    double min_duration = 0.0;
    double max_duration = 0.0;
    std::string error_name;

    bool operator==(const DeadlineLimits&) const = default;
};

struct LogicalCheck {
    std::vector<std::string> expected_order;
    std::string error_name;

    bool operator==(const LogicalCheck&) const = default;
};

struct WatchdogSpec {
    SupervisionType supervision_type;
    std::optional<AliveLimits> alive_limits;
    std::optional<DeadlineLimits> deadline_limits;
    std::optional<LogicalCheck> logical_check;

    bool operator==(const WatchdogSpec&) const = default;
};

struct SchedulingInfo {
    std::string run_type;
    double cycle_time = 0.0;
    std::string description;
    std::optional<double> initial_offset;
    std::optional<std::int64_t> priority;
    std::optional<std::string> scheduling_hint;
    std::optional<double> debounce_time;
    AsilLevel implemented_asil = AsilLevel::kQM;
    std::optional<std::string> previous_runnable;
    WatchdogSpec supervision;
    std::optional<std::uint64_t> stack_size;

    bool is_cyclic() const { return run_type == "cyclic"; }

    bool operator==(const SchedulingInfo&) const = default;
};

/// Messages and methods carry no further structure in the model.
struct NamedRecord {
    std::string name;
    std::string description;

    bool operator==(const NamedRecord&) const = default;
};

struct AllocationInfo {
    std::uint64_t required_memory = 0;

    bool operator==(const AllocationInfo&) const = default;
};

struct FunctionModel {
    std::string name;
    std::string description;
    std::vector<InterfaceDatatype> interface_data;
    SchedulingInfo scheduling;
    std::vector<NamedRecord> messages;
    std::vector<NamedRecord> methods;
    std::vector<Parameter> parameters;
    std::vector<ErrorSpec> errors;
    std::vector<SafetyReaction> safety_reactions;
    std::optional<WatchdogSpec> watchdog;
    std::optional<AllocationInfo> allocation;

    const ErrorSpec* find_error(std::string_view name) const;
    const InterfaceDatatype* find_interface(std::string_view name) const;
    /// Scheduling supervision if set, otherwise the top-level Watchdog.
    WatchdogSpec effective_watchdog() const;
    /// Every named struct/array/enumeration datatype reachable from the model,
    /// first declaration wins.
    std::vector<Datatype> declared_datatypes() const;

    bool operator==(const FunctionModel&) const = default;
};

// --- JSON mapping ---------------------------------------------------------

/// Structural decode from a JSON value. Unknown members, wrong types and
/// out-of-set enumeration literals are collected as findings under `path`.
Datatype datatype_from_json(const nlohmann::json& j, const std::string& path, ValidationReport& report);
nlohmann::json to_json(const Datatype& datatype);

Parameter parameter_from_json(const nlohmann::json& j, const std::string& path, ValidationReport& report);
nlohmann::json to_json(const Parameter& parameter);

/// Structural decode only: no semantic or reference checks. Throws
/// Error{kSchema} carrying every structural finding.
FunctionModel decode_function_model(const nlohmann::json& document);
FunctionModel function_model_from_json_fragment(const nlohmann::json& j, const std::string& path,
                                                ValidationReport& report);
nlohmann::json to_json(const FunctionModel& model);

/// Parse, decode and validate. Throws Error{kJsonSyntax} for malformed text,
/// Error{kSchema} for structural violations and Error{kUnresolvedReference} or
/// Error{kValidation} when validation reports errors.
FunctionModel parse_function_model(std::string_view json_text);

/// Semantic checks: ranges, references, scheduling and watchdog limits.
ValidationReport validate_function_model(const FunctionModel& model);

/// Canonical JSON text (sorted members, compact, shortest round-trip numbers).
std::string serialize_function_model(const FunctionModel& model);

/// JSON Schema (draft 2020-12) for Function JSON documents.
std::string emit_function_schema();
/// `$defs` shared with the integration schema.
nlohmann::json function_schema_defs();

}  // namespace fnkit
