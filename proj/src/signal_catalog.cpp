// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/signal_catalog.hpp"

#include "json_reader.hpp"

#include <algorithm>
#include <regex>

namespace fnkit {

using nlohmann::json;
using detail::index_path;
using detail::member_path;

bool is_identifier(std::string_view text) {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) {
        return false;
    }
    return std::all_of(text.begin(), text.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 && static_cast<unsigned char>(c) < 0x80;
    });
}

const char* signal_path_pattern() { return "^[A-Za-z][A-Za-z0-9]*(\\.[A-Za-z][A-Za-z0-9]*)+$"; }

namespace {

/// Empty string on success, otherwise the reason.
std::string split_path(std::string_view text, std::vector<std::string>& segments) {
    if (text.empty()) {
        return "empty signal path";
    }
    std::size_t start = 0;
    for (std::size_t index = 0;; ++index) {
        const auto dot = text.find('.', start);
        const auto segment = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (segment.empty()) {
            return "empty segment at index " + std::to_string(index);
        }
        if (!is_identifier(segment)) {
            return "illegal segment \"" + std::string(segment) + "\" at index " + std::to_string(index);
        }
        segments.emplace_back(segment);
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    if (segments.size() < 2) {
        return "fewer than 2 segments in \"" + std::string(text) + "\"";
    }
    return {};
}

}  // namespace

SignalPath SignalPath::parse(std::string_view text) {
    std::vector<std::string> segments;
    if (auto reason = split_path(text, segments); !reason.empty()) {
        throw Error(ErrorKind::kIllegalIdentifier, reason);
    }
    return SignalPath(std::move(segments));
}

std::optional<SignalPath> SignalPath::try_parse(std::string_view text) {
    std::vector<std::string> segments;
    if (!split_path(text, segments).empty()) {
        return std::nullopt;
    }
    return SignalPath(std::move(segments));
}

std::string SignalPath::str() const {
    std::string out;
    for (const auto& s : segments_) {
        if (!out.empty()) out += '.';
        out += s;
    }
    return out;
}

SignalPath parse_signal_path(std::string_view text) { return SignalPath::parse(text); }

// --- tree -------------------------------------------------------------------

const SignalTree::Node* SignalTree::find_node(const std::vector<std::string>& segments) const {
    const Node* node = &root_;
    for (const auto& s : segments) {
        auto it = node->children.find(s);
        if (it == node->children.end()) {
            return nullptr;
        }
        node = &it->second;
    }
    return node;
}

const LeafMetadata* SignalTree::find(const SignalPath& path) const {
    const Node* node = find_node(path.segments());
    return node != nullptr && node->leaf ? &*node->leaf : nullptr;
}

namespace {

void collect_leaves(const SignalTree::Node& node, std::vector<std::string>& prefix, std::vector<CatalogEntry>& out) {
    if (node.leaf) {
        std::string text;
        for (const auto& s : prefix) {
            if (!text.empty()) text += '.';
            text += s;
        }
        out.push_back(CatalogEntry{SignalPath::parse(text), *node.leaf});
    }
    for (const auto& [name, child] : node.children) {
        prefix.push_back(name);
        collect_leaves(child, prefix, out);
        prefix.pop_back();
    }
}

json leaf_to_json(const LeafMetadata& m) {
    json j{{"datatype", m.datatype}, {"unit", m.unit}, {"description", m.description}};
    if (m.min) j["min"] = *m.min;
    if (m.max) j["max"] = *m.max;
    if (m.default_value) j["default"] = *m.default_value;
    if (m.asil) j["asil"] = to_string(*m.asil);
    return j;
}

json node_to_json(const SignalTree::Node& node) {
    if (node.leaf) {
        return leaf_to_json(*node.leaf);
    }
    json j = json::object();
    for (const auto& [name, child] : node.children) {
        j[name] = node_to_json(child);
    }
    return j;
}

}  // namespace

std::vector<CatalogEntry> SignalTree::leaves() const {
    std::vector<CatalogEntry> out;
    std::vector<std::string> prefix;
    collect_leaves(root_, prefix, out);
    return out;
}

json SignalTree::to_json() const { return node_to_json(root_); }

SignalTree build_tree(const std::vector<CatalogEntry>& leaves) {
    SignalTree tree;
    for (const auto& entry : leaves) {
        SignalTree::Node* node = &tree.root_;
        const auto& segments = entry.path.segments();
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (node->leaf) {
                throw Error(ErrorKind::kConflict, "\"" + entry.path.str() + "\" passes through leaf signal");
            }
            node = &node->children[segments[i]];
        }
        if (node->leaf) {
            throw Error(ErrorKind::kDuplicate, "duplicate signal path \"" + entry.path.str() + "\"");
        }
        if (!node->children.empty()) {
            throw Error(ErrorKind::kConflict, "\"" + entry.path.str() + "\" is both a leaf and a branch");
        }
        node->leaf = entry.metadata;
        ++tree.leaf_count_;
    }
    return tree;
}

std::vector<CatalogEntry> parse_catalog(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kJsonSyntax, std::string("catalog JSON syntax error: ") + e.what());
    }
    ValidationReport report;
    std::vector<CatalogEntry> out;
    if (!document.is_array()) {
        report.error("", "schema", "catalog must be a JSON array of leaf records");
    } else {
        for (std::size_t i = 0; i < document.size(); ++i) {
            const auto path = index_path("", i);
            detail::ObjectReader r(document[i], path, report);
            if (!r.valid()) {
                continue;
            }
            const auto text = r.string("path");
            LeafMetadata m;
            m.datatype = r.nonempty_string("datatype");
            m.unit = r.opt_string("unit").value_or("");
            m.min = r.opt_number("min");
            m.max = r.opt_number("max");
            if (const auto* d = r.member("default", false)) {
                m.default_value = *d;
            }
            m.description = r.opt_string("description").value_or("");
            m.asil = r.opt_enumeration<AsilLevel>("asil", false, parse_asil, "{QM, A, B, C, D}");
            r.finish();
            auto signal = SignalPath::try_parse(text);
            if (!signal) {
                report.error(member_path(path, "path"), "schema", "\"" + text + "\" is not a valid signal path");
                continue;
            }
            out.push_back(CatalogEntry{*signal, m});
        }
    }
    if (!report.valid()) {
        throw Error(ErrorKind::kSchema, "invalid signal catalog", report.findings);
    }
    return out;
}

SignalTree load_catalog(std::string_view json_text) { return build_tree(parse_catalog(json_text)); }

// --- naming conventions ------------------------------------------------------

namespace {

struct Convention {
    InterfaceNameKind kind;
    const char* name;
    std::size_t arity;
    const char* suffix;
};

constexpr Convention kConventions[] = {
    {InterfaceNameKind::kError, "Error", 2, "ErrorSts"},
    {InterfaceNameKind::kSafetyReaction, "SafetyReaction", 1, "SftyCondSts"},
    {InterfaceNameKind::kModeIn, "ModeIn", 1, "Mode_In"},
    {InterfaceNameKind::kModeOut, "ModeOut", 1, "Mode_Out"},
    {InterfaceNameKind::kInit, "Init", 1, "Init"},
    {InterfaceNameKind::kStep, "Step", 1, "Step"},
    {InterfaceNameKind::kTerminate, "Terminate", 1, "Terminate"},
};

const Convention& convention(InterfaceNameKind kind) {
    for (const auto& c : kConventions) {
        if (c.kind == kind) return c;
    }
    return kConventions[0];
}

const std::regex& convention_regex(InterfaceNameKind kind) {
    static const std::vector<std::regex> all = [] {
        std::vector<std::regex> out;
        for (const auto& c : kConventions) {
            std::string source = "^";
            for (std::size_t i = 0; i < c.arity; ++i) {
                source += "[A-Za-z][A-Za-z0-9]*_";
            }
            source += c.suffix;
            source += "$";
            out.emplace_back(source);
        }
        return out;
    }();
    return all[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view to_string(InterfaceNameKind kind) { return convention(kind).name; }

const std::vector<InterfaceNameKind>& all_interface_name_kinds() {
    static const std::vector<InterfaceNameKind> all = [] {
        std::vector<InterfaceNameKind> out;
        for (const auto& c : kConventions) out.push_back(c.kind);
        return out;
    }();
    return all;
}

std::size_t interface_name_arity(InterfaceNameKind kind) { return convention(kind).arity; }

DerivedInterfaceName derive_interface_name(InterfaceNameKind kind, const std::vector<std::string>& parts) {
    const auto& c = convention(kind);
    if (parts.size() != c.arity) {
        throw Error(ErrorKind::kIllegalIdentifier, std::string(c.name) + " names take " + std::to_string(c.arity) +
                                                       " part(s), got " + std::to_string(parts.size()));
    }
    std::string rendered;
    for (const auto& p : parts) {
        if (!is_identifier(p)) {
            throw Error(ErrorKind::kIllegalIdentifier, "illegal identifier \"" + p + "\" in interface name");
        }
        rendered += p;
        rendered += '_';
    }
    rendered += c.suffix;
    return DerivedInterfaceName{kind, parts, rendered};
}

bool matches_interface_name(InterfaceNameKind kind, std::string_view name) {
    return std::regex_match(name.begin(), name.end(), convention_regex(kind));
}

std::vector<InterfaceNameKind> classify_interface_name(std::string_view name) {
    std::vector<InterfaceNameKind> out;
    for (const auto& c : kConventions) {
        if (matches_interface_name(c.kind, name)) out.push_back(c.kind);
    }
    return out;
}

// --- conformance ---------------------------------------------------------------

std::string catalog_datatype_of(const Datatype& datatype) {
    if (const auto* n = datatype.get_if<NumericalDatatype>()) return std::string(to_string(n->base));
    if (datatype.is<BooleanDatatype>()) return "boolean";
    if (datatype.is<TextDatatype>()) return "string";
    if (datatype.is<StructDatatype>()) return "struct";
    if (datatype.is<EnumerationDatatype>()) return "enum";
    if (const auto* a = datatype.get_if<ArrayDatatype>()) {
        auto element = catalog_datatype_of(*a->element);
        return element.empty() ? std::string{} : element + "[]";
    }
    return {};
}

namespace {

/// VSS spells the float bases "float" and "double".
std::string normalize_catalog_datatype(std::string text) {
    const auto fix = [](std::string base) {
        if (base == "float") return std::string("float32");
        if (base == "double") return std::string("float64");
        return base;
    };
    if (text.size() > 2 && text.compare(text.size() - 2, 2, "[]") == 0) {
        return fix(text.substr(0, text.size() - 2)) + "[]";
    }
    return fix(text);
}

std::string fmt(double v) { return json(v).dump(); }

}  // namespace

ValidationReport check_catalog_conformance(const FunctionModel& model, const SignalTree& tree) {
    ValidationReport report;
    for (std::size_t i = 0; i < model.interface_data.size(); ++i) {
        const auto& itf = model.interface_data[i];
        const auto path = index_path("InterfaceData", i);
        auto signal = SignalPath::try_parse(itf.name);
        const LeafMetadata* leaf = signal ? tree.find(*signal) : nullptr;
        if (leaf == nullptr) {
            report.error(member_path(path, "Name"), "unknown-signal", "unknown signal \"" + itf.name + "\"");
            continue;
        }
        // TypeReference datatypes are resolved against the model's named types.
        const Datatype* datatype = &itf.datatype;
        std::vector<Datatype> named;
        if (const auto* r = itf.datatype.get_if<TypeReference>()) {
            named = model.declared_datatypes();
            auto it = std::find_if(named.begin(), named.end(),
                                   [&](const Datatype& d) { return d.declared_name() == r->type_name; });
            datatype = it == named.end() ? nullptr : &*it;
        }
        const std::string expected = normalize_catalog_datatype(leaf->datatype);
        const std::string actual = datatype ? catalog_datatype_of(*datatype) : std::string{};
        if (actual != expected) {
            report.error(member_path(path, "Datatype"), "datatype-mismatch",
                         "\"" + itf.name + "\" is " + (actual.empty() ? "unresolved" : actual) + ", catalog says " +
                             expected);
        }
        const NumericalDatatype* numeric = nullptr;
        if (datatype) {
            numeric = datatype->get_if<NumericalDatatype>();
            if (const auto* a = datatype->get_if<ArrayDatatype>()) numeric = a->element->get_if<NumericalDatatype>();
        }
        if (numeric == nullptr) {
            continue;
        }
        if (numeric->unit != leaf->unit) {
            report.error(member_path(path, "Datatype.Unit"), "unit-mismatch",
                         "\"" + itf.name + "\" unit \"" + numeric->unit + "\", catalog says \"" + leaf->unit + "\"");
        }
        if ((leaf->min && numeric->min < *leaf->min) || (leaf->max && numeric->max > *leaf->max)) {
            report.error(member_path(path, "Datatype"), "range-mismatch",
                         "\"" + itf.name + "\" range [" + fmt(numeric->min) + ", " + fmt(numeric->max) +
                             "] exceeds catalog range [" + (leaf->min ? fmt(*leaf->min) : "-inf") + ", " +
                             (leaf->max ? fmt(*leaf->max) : "inf") + "]");
        }
    }
    for (std::size_t i = 0; i < model.errors.size(); ++i) {
        const auto& name = model.errors[i].name;
        if (!matches_interface_name(InterfaceNameKind::kError, name)) {
            report.warning(member_path(index_path("ErrorList", i), "Name"), "naming",
                           "error \"" + name + "\" does not follow FunctionName_ErrorName_ErrorSts");
        }
    }
    for (std::size_t i = 0; i < model.safety_reactions.size(); ++i) {
        const auto& name = model.safety_reactions[i].name;
        if (!matches_interface_name(InterfaceNameKind::kSafetyReaction, name)) {
            report.warning(member_path(index_path("SafetyReactionList", i), "Name"), "naming",
                           "safety reaction \"" + name + "\" does not follow <SafetyCondition>_SftyCondSts");
        }
    }
    return report;
}

}  // namespace fnkit
