// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file template_engine.hpp
/// @brief Minimal text templates: `{{name}}` substitution and
///        `{{#list}}...{{/list}}` / `{{^list}}...{{/list}}` blocks.
///
/// Bindings are a JSON object. Strings, numbers and booleans render as text.
/// A `#` block repeats its body once per element of an array binding (each
/// element an object whose members shadow the outer scope), or once for a
/// `true` boolean. A `^` block renders its body only for an empty array or
/// `false`. A line holding nothing but a block tag is dropped entirely.

#pragma once

#include "fnkit/error.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace fnkit {

/// Throws Error{kTemplate} naming `template_name` and the 1-based line for an
/// unbound placeholder, a non-scalar placeholder binding, or a malformed
/// block.
std::string render_template(std::string_view text, const nlohmann::json& context,
                            std::string_view template_name = "<inline>");

}  // namespace fnkit
