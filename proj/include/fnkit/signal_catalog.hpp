// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file signal_catalog.hpp
/// @brief VSS-style signal tree, dot-path grammar and the naming conventions
///        for error, safety-reaction, mode and scheduling interfaces.

#pragma once

#include "fnkit/error.hpp"
#include "fnkit/function_model.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit {

/// Dot-separated signal name, e.g. `Vehicle.Chassis.Axle.Row1.Wheel.Left.Speed`.
/// At least two segments, each `[A-Za-z][A-Za-z0-9]*`.
class SignalPath {
public:
    /// Throws Error{kIllegalIdentifier} naming the first offending segment.
    static SignalPath parse(std::string_view text);
    static std::optional<SignalPath> try_parse(std::string_view text);

    const std::vector<std::string>& segments() const { return segments_; }
    std::size_t size() const { return segments_.size(); }
    std::string str() const;

    bool operator==(const SignalPath&) const = default;
    auto operator<=>(const SignalPath&) const = default;

private:
    explicit SignalPath(std::vector<std::string> segments) : segments_(std::move(segments)) {}
    std::vector<std::string> segments_;
};

/// Free-function spelling of SignalPath::parse.
SignalPath parse_signal_path(std::string_view text);

/// `[A-Za-z][A-Za-z0-9]*`
bool is_identifier(std::string_view text);

/// Regex source accepted by schema `pattern` keywords for signal paths.
const char* signal_path_pattern();

struct LeafMetadata {
    std::string datatype;
    std::string unit;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<nlohmann::json> default_value;
    std::string description;
    std::optional<AsilLevel> asil;

    bool operator==(const LeafMetadata&) const = default;
};

struct CatalogEntry {
    SignalPath path;
    LeafMetadata metadata;
};

/// Hierarchical catalog. Branch children are kept in name order, so the tree
/// does not depend on insertion order.
class SignalTree {
public:
    struct Node {
        std::map<std::string, Node> children;
        std::optional<LeafMetadata> leaf;

        bool is_leaf() const { return leaf.has_value(); }
        bool operator==(const Node&) const = default;
    };

    const Node& root() const { return root_; }
    const LeafMetadata* find(const SignalPath& path) const;
    const Node* find_node(const std::vector<std::string>& segments) const;
    std::size_t leaf_count() const { return leaf_count_; }
    /// All leaves in lexicographic path order.
    std::vector<CatalogEntry> leaves() const;

    /// Canonical nested JSON form (branches as objects, leaves carry metadata).
    nlohmann::json to_json() const;

    bool operator==(const SignalTree& other) const { return root_ == other.root_; }

private:
    friend SignalTree build_tree(const std::vector<CatalogEntry>& leaves);
    Node root_;
    std::size_t leaf_count_ = 0;
};

/// Throws Error{kDuplicate} for a repeated path and Error{kConflict} when a
/// path is both a leaf and a prefix of another path.
SignalTree build_tree(const std::vector<CatalogEntry>& leaves);

/// Catalog file: flat JSON list of {path, datatype, unit, min, max, default,
/// description[, asil]}.
std::vector<CatalogEntry> parse_catalog(std::string_view json_text);
SignalTree load_catalog(std::string_view json_text);

enum class InterfaceNameKind { kError, kSafetyReaction, kModeIn, kModeOut, kInit, kStep, kTerminate };

std::string_view to_string(InterfaceNameKind kind);
const std::vector<InterfaceNameKind>& all_interface_name_kinds();

struct DerivedInterfaceName {
    InterfaceNameKind kind;
    std::vector<std::string> parts;
    std::string rendered;
};

/// Renders e.g. (Error, [WheelSpeedCalculation, RangeError]) as
/// `WheelSpeedCalculation_RangeError_ErrorSts`. Throws Error{kIllegalIdentifier}.
DerivedInterfaceName derive_interface_name(InterfaceNameKind kind, const std::vector<std::string>& parts);

/// Number of parts each kind takes.
std::size_t interface_name_arity(InterfaceNameKind kind);

/// Kinds whose naming pattern `name` matches (at most one for any rendered
/// name).
std::vector<InterfaceNameKind> classify_interface_name(std::string_view name);
bool matches_interface_name(InterfaceNameKind kind, std::string_view name);

/// Findings for interfaces missing from the catalog, datatype/unit/range
/// mismatches, and error/safety-reaction names breaking the conventions.
ValidationReport check_catalog_conformance(const FunctionModel& model, const SignalTree& tree);

/// Catalog datatype string a model datatype corresponds to, e.g. "float32",
/// "boolean", "float32[]". Empty when there is no catalog spelling.
std::string catalog_datatype_of(const Datatype& datatype);

}  // namespace fnkit
