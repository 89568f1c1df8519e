// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file value.hpp
/// @brief Signal values on the simulated bus and their datatype rules.
///
/// Values are JSON values normalized per datatype: integral numerical bases
/// hold integers, float32 values are rounded to single precision, structs
/// are objects keyed by field name, arrays have exactly `length` elements
/// and enumerations hold the literal's integer value.

#pragma once

#include "fnkit/function_model.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace fnkit {

using Value = nlohmann::json;

/// Named datatypes by declared name.
using TypeTable = std::map<std::string, Datatype>;

TypeTable make_type_table(const std::vector<Datatype>& declared);

/// Follows TypeReference chains; throws Error{kUnresolvedReference}.
const Datatype& resolve_datatype(const Datatype& datatype, const TypeTable& types);

Value default_value(const Datatype& datatype, const TypeTable& types);

/// Normalized copy of `value`; throws Error{kTypeMismatch} when it does not
/// fit the datatype (wrong kind, not representable in the base, wrong array
/// length, unknown struct field or enumeration literal, text too long).
Value coerce_value(const Datatype& datatype, const Value& value, const TypeTable& types);

/// Whether every numerical part of `value` lies inside its [Min, Max].
bool in_range(const Datatype& datatype, const Value& value, const TypeTable& types);

/// Bit-exact comparison key (canonical dump).
std::string value_key(const Value& value);

}  // namespace fnkit
