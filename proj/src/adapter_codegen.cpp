// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/adapter_codegen.hpp"

#include "fnkit/template_engine.hpp"
#include "json_reader.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace fnkit {

using nlohmann::json;
using detail::ObjectReader;

namespace {

#include "builtin_templates.inc"

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::kIo, "cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::kIo, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error(ErrorKind::kIo, "write failed for " + path.string());
    }
}

std::string identifier(const std::string& text) {
    std::string out;
    for (char c : text) {
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
    return out;
}

std::int64_t to_us(double ms) { return static_cast<std::int64_t>(std::llround(ms * 1000.0)); }

std::string cpp_type(const Datatype& d) {
    if (const auto* n = d.get_if<NumericalDatatype>()) {
        switch (n->base) {
            case NumericBase::kUint8: return "std::uint8_t";
            case NumericBase::kUint16: return "std::uint16_t";
            case NumericBase::kUint32: return "std::uint32_t";
            case NumericBase::kUint64: return "std::uint64_t";
            case NumericBase::kInt8: return "std::int8_t";
            case NumericBase::kInt16: return "std::int16_t";
            case NumericBase::kInt32: return "std::int32_t";
            case NumericBase::kInt64: return "std::int64_t";
            case NumericBase::kFloat32: return "float";
            case NumericBase::kFloat64: return "double";
        }
    }
    if (d.is<BooleanDatatype>()) return "bool";
    if (d.is<TextDatatype>()) return "std::string";
    if (auto name = d.declared_name()) return *name;
    if (const auto* r = d.get_if<TypeReference>()) return r->type_name;
    if (const auto* a = d.get_if<ArrayDatatype>()) {
        return "std::array<" + cpp_type(*a->element) + ", " + std::to_string(a->length) + ">";
    }
    return "sim::Struct";
}

std::string number_text(double v) { return json(v).dump(); }

}  // namespace

std::string_view to_string(FileOrigin origin) {
    return origin == FileOrigin::kGenerated ? "generated" : "manual_slot";
}

std::string buffer_name_for(const std::string& source_path) { return identifier(source_path); }

// --- manifest ------------------------------------------------------------------------

json AdapterManifest::lifecycle_bindings() {
    return {{"Configuring", "init"},
            {"ShuttingDown", "terminate"},
            {"ActiveCycle", {"setExternalInputs", "step", "getExternalOutputs"}}};
}

AdapterManifest build_manifest(const IntegrationModel& model, const std::string& component) {
    const IntegrationComponent* c = model.find_component(component);
    if (c == nullptr) {
        throw Error(ErrorKind::kUnknownComponent, "unknown component \"" + component + "\"");
    }
    if (c->functions.size() != 1) {
        throw Error(ErrorKind::kInvalidArgument, "component \"" + component + "\" holds " +
                                                     std::to_string(c->functions.size()) +
                                                     " functions; adapters need exactly one");
    }
    const FunctionModel& f = c->functions.front();
    AdapterManifest m;
    m.component_name = c->name;
    m.executable_name = c->executable_name;
    m.function_name = f.name;
    m.cycle_time = f.scheduling.cycle_time;
    m.initial_offset = f.scheduling.initial_offset.value_or(0.0);
    m.priority = f.scheduling.priority.value_or(0);
    m.debounce_time = f.scheduling.debounce_time;
    m.watchdog = f.effective_watchdog();
    m.errors = f.errors;
    m.safety_reactions = f.safety_reactions;
    m.datatypes = model.datatypes;

    for (const auto& ref : model.events_of(*c)) {
        const InterfaceDatatype* itf = f.find_interface(ref.source_path);
        if (ref.direction == ServiceDirection::kRequired) {
            ManifestSubscription s;
            s.service = ref.service;
            s.event = ref.event;
            s.source_path = ref.source_path;
            s.buffer_name = buffer_name_for(ref.source_path);
            s.datatype = ref.definition->datatype;
            if (itf != nullptr) {
                s.timeout_value = itf->timeout_value;
                s.timeout_error = itf->timeout_error;
                s.range_error_action = itf->range_error_action;
            }
            m.subscriptions.push_back(std::move(s));
        } else {
            m.publications.push_back(ManifestPublication{ref.service, ref.event, ref.source_path,
                                                         buffer_name_for(ref.source_path), ref.definition->datatype});
        }
    }
    return m;
}

json to_json(const AdapterManifest& m) {
    json subs = json::array();
    for (const auto& s : m.subscriptions) {
        json j{{"Service", s.service},
               {"Event", s.event},
               {"SourcePath", s.source_path},
               {"Buffer", s.buffer_name},
               {"Datatype", to_json(s.datatype)}};
        if (s.timeout_value) j["TimeoutValue"] = *s.timeout_value;
        if (s.timeout_error) j["TimeoutError"] = *s.timeout_error;
        if (s.range_error_action) j["RangeErrorAction"] = to_string(*s.range_error_action);
        subs.push_back(j);
    }
    json pubs = json::array();
    for (const auto& p : m.publications) {
        pubs.push_back({{"Service", p.service},
                        {"Event", p.event},
                        {"SourcePath", p.source_path},
                        {"Buffer", p.buffer_name},
                        {"Datatype", to_json(p.datatype)}});
    }
    // Watchdog/errors/safety reactions reuse the function-model encoding via a holder model.
    FunctionModel holder;
    holder.errors = m.errors;
    holder.safety_reactions = m.safety_reactions;
    holder.watchdog = m.watchdog;
    const json encoded = to_json(holder);
    json types = json::array();
    for (const auto& d : m.datatypes) types.push_back(to_json(d));
    json j{{"ComponentName", m.component_name},
           {"ExecutableName", m.executable_name},
           {"FunctionName", m.function_name},
           {"CycleTime", m.cycle_time},
           {"InitialOffset", m.initial_offset},
           {"Priority", m.priority},
           {"Subscriptions", subs},
           {"Publications", pubs},
           {"LifecycleBindings", AdapterManifest::lifecycle_bindings()},
           {"Watchdog", encoded.at("Watchdog")},
           {"ErrorList", encoded.value("ErrorList", json::array())},
           {"SafetyReactionList", encoded.value("SafetyReactionList", json::array())},
           {"DataTypes", types}};
    if (m.debounce_time) j["DebounceTime"] = *m.debounce_time;
    return j;
}

AdapterManifest manifest_from_json(const json& j) {
    ValidationReport report;
    AdapterManifest m;
    ObjectReader r(j, "", report);
    if (r.valid()) {
        m.component_name = r.nonempty_string("ComponentName");
        m.executable_name = r.nonempty_string("ExecutableName");
        m.function_name = r.nonempty_string("FunctionName");
        m.cycle_time = r.number("CycleTime", 0.0);
        m.initial_offset = r.number("InitialOffset", 0.0);
        m.priority = r.integer("Priority");
        m.debounce_time = r.opt_number("DebounceTime", false, 0.0);
        const auto datatype = [&](ObjectReader& er) {
            const auto* d = er.member("Datatype", true);
            return d ? datatype_from_json(*d, er.at("Datatype"), report) : Datatype{};
        };
        m.subscriptions = r.list<ManifestSubscription>("Subscriptions", true, [&](const json& e, const std::string& p) {
            ManifestSubscription s;
            ObjectReader er(e, p, report);
            if (!er.valid()) return s;
            s.service = er.nonempty_string("Service");
            s.event = er.nonempty_string("Event");
            s.source_path = er.nonempty_string("SourcePath");
            s.buffer_name = er.nonempty_string("Buffer");
            s.datatype = datatype(er);
            s.timeout_value = er.opt_number("TimeoutValue");
            s.timeout_error = er.opt_string("TimeoutError");
            s.range_error_action = er.opt_enumeration<RangeErrorAction>(
                "RangeErrorAction", false,
                [](std::string_view t) -> std::optional<RangeErrorAction> {
                    if (t == "Default") return RangeErrorAction::kDefault;
                    if (t == "Init") return RangeErrorAction::kInit;
                    return std::nullopt;
                },
                "{Default, Init}");
            er.finish();
            return s;
        });
        m.publications = r.list<ManifestPublication>("Publications", true, [&](const json& e, const std::string& p) {
            ManifestPublication s;
            ObjectReader er(e, p, report);
            if (!er.valid()) return s;
            s.service = er.nonempty_string("Service");
            s.event = er.nonempty_string("Event");
            s.source_path = er.nonempty_string("SourcePath");
            s.buffer_name = er.nonempty_string("Buffer");
            s.datatype = datatype(er);
            er.finish();
            return s;
        });
        if (const auto* lb = r.member("LifecycleBindings", true); lb && *lb != AdapterManifest::lifecycle_bindings()) {
            report.error("LifecycleBindings", "schema", "lifecycle bindings are fixed to init/step/terminate");
        }
        json holder{{"Name", "Holder"},
                    {"Description", ""},
                    {"InterfaceData", json::array()},
                    {"SchedulingInfo",
                     {{"RunType", "cyclic"},
                      {"CycleTime", 1},
                      {"Description", ""},
                      {"ImplementedAsil", "QM"},
                      {"Supervision", {{"SupervisionType", "None"}}}}}};
        if (const auto* w = r.member("Watchdog", true)) holder["Watchdog"] = *w;
        if (const auto* e = r.member("ErrorList", true)) holder["ErrorList"] = *e;
        if (const auto* s = r.member("SafetyReactionList", true)) holder["SafetyReactionList"] = *s;
        const FunctionModel decoded = function_model_from_json_fragment(holder, "", report);
        m.watchdog = decoded.watchdog.value_or(WatchdogSpec{});
        m.errors = decoded.errors;
        m.safety_reactions = decoded.safety_reactions;
        m.datatypes = r.list<Datatype>("DataTypes", true, [&](const json& e, const std::string& p) {
            return datatype_from_json(e, p, report);
        });
        r.finish();
    }
    if (!report.findings.empty()) {
        throw Error(ErrorKind::kSchema, "invalid adapter manifest", report.findings);
    }
    return m;
}

AdapterManifest parse_manifest(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kJsonSyntax, std::string("manifest JSON syntax error: ") + e.what());
    }
    return manifest_from_json(document);
}

// --- templates -----------------------------------------------------------------------------

const TemplateSet& builtin_templates() {
    static const TemplateSet set = [] {
        TemplateSet out;
        for (const auto& [name, text] : kBuiltinTemplates) out.emplace(name, text);
        return out;
    }();
    return set;
}

TemplateSet load_templates(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorKind::kIo, "template directory " + dir.string() + " not found");
    }
    TemplateSet out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            out.emplace(entry.path().filename().string(), read_file(entry.path()));
        }
    }
    if (out.empty()) {
        throw Error(ErrorKind::kIo, "template directory " + dir.string() + " is empty");
    }
    return out;
}

namespace {

json template_context(const IntegrationModel& model, const AdapterManifest& m) {
    std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, std::int64_t>> ids;
    for (const auto& c : model.components) {
        if (c.name != m.component_name) continue;
        for (const auto& s : c.service_interfaces) {
            for (const auto& e : s.events) ids[{s.name, e.name}] = {s.service_id, e.event_id};
        }
    }
    json subs = json::array();
    for (const auto& s : m.subscriptions) {
        const auto [sid, eid] = ids.at({s.service, s.event});
        json j{{"service", s.service}, {"event", s.event},     {"path", s.source_path}, {"buffer", s.buffer_name},
               {"cpp_type", cpp_type(s.datatype)}, {"service_id", sid}, {"event_id", eid}};
        j["has_timeout"] = s.timeout_value.has_value() && s.timeout_error.has_value();
        j["timeout_us"] = s.timeout_value ? to_us(*s.timeout_value) : 0;
        j["timeout_error_ident"] = identifier(s.timeout_error.value_or(""));
        const auto* n = s.datatype.get_if<NumericalDatatype>();
        j["has_range"] = n != nullptr && s.range_error_action.has_value();
        j["min"] = n ? number_text(n->min) : "0";
        j["max"] = n ? number_text(n->max) : "0";
        j["range_action"] = s.range_error_action ? std::string(to_string(*s.range_error_action)) : "Default";
        subs.push_back(j);
    }
    json pubs = json::array();
    for (const auto& p : m.publications) {
        const auto [sid, eid] = ids.at({p.service, p.event});
        pubs.push_back({{"service", p.service},
                        {"event", p.event},
                        {"path", p.source_path},
                        {"buffer", p.buffer_name},
                        {"cpp_type", cpp_type(p.datatype)},
                        {"service_id", sid},
                        {"event_id", eid}});
    }
    json errors = json::array();
    for (const auto& e : m.errors) {
        errors.push_back({{"name", e.name},
                          {"ident", identifier(e.name)},
                          {"maturation_us", to_us(e.maturation_time)},
                          {"reset_us", to_us(e.reset_time)}});
    }
    json safety = json::array();
    for (const auto& s : m.safety_reactions) {
        safety.push_back({{"name", s.name}, {"ident", identifier(s.name)}});
    }
    return {{"tool_version", kToolVersion},
            {"component", m.component_name},
            {"executable", m.executable_name},
            {"function", m.function_name},
            {"class_name", identifier(m.component_name) + "Adapter"},
            {"cycle_time_ms", number_text(m.cycle_time)},
            {"cycle_time_us", to_us(m.cycle_time)},
            {"offset_ms", number_text(m.initial_offset)},
            {"offset_us", to_us(m.initial_offset)},
            {"priority", m.priority},
            {"subscriptions", subs},
            {"publications", pubs},
            {"errors", errors},
            {"safety_reactions", safety}};
}

}  // namespace

GeneratedArtifact generate_adapter(const IntegrationModel& model, const std::string& component,
                                   const TemplateSet& templates) {
    GeneratedArtifact artifact;
    artifact.manifest = build_manifest(model, component);
    const json context = template_context(model, artifact.manifest);
    for (const auto& [name, text] : templates) {
        const std::string suffix = ".tmpl";
        if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
            continue;
        }
        GeneratedFile file;
        file.path = component + "_" + name.substr(0, name.size() - suffix.size());
        file.text = render_template(text, context, name);
        extract_manual_slots(file.text);  // reject malformed marker structure early
        artifact.files.push_back(std::move(file));
    }
    if (artifact.files.empty()) {
        throw Error(ErrorKind::kTemplate, "template set has no *.tmpl files");
    }
    return artifact;
}

// --- manual slots ------------------------------------------------------------------------------

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos + 1));
        pos = nl + 1;
    }
    return lines;
}

std::string strip(const std::string& line) {
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = line.find_last_not_of(" \t\r\n");
    return line.substr(b, e - b + 1);
}

std::optional<std::string> marker_id(const std::string& line, const char* marker) {
    const std::string s = strip(line);
    const std::string m = marker;
    if (s.rfind(m, 0) != 0) return std::nullopt;
    return strip(s.substr(m.size()));
}

}  // namespace

std::map<std::string, std::string> extract_manual_slots(const std::string& text) {
    std::map<std::string, std::string> slots;
    std::optional<std::string> open;
    std::string body;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        if (auto id = marker_id(line, kManualBegin)) {
            if (open) {
                throw Error(ErrorKind::kTemplate, "line " + std::to_string(line_no) + ": manual slot \"" + *id +
                                                      "\" opened inside \"" + *open + "\"");
            }
            if (slots.count(*id) != 0) {
                throw Error(ErrorKind::kTemplate, "duplicate manual slot \"" + *id + "\"");
            }
            open = *id;
            body.clear();
        } else if (auto id = marker_id(line, kManualEnd)) {
            if (!open || *open != *id) {
                throw Error(ErrorKind::kTemplate,
                            "line " + std::to_string(line_no) + ": unmatched manual slot end \"" + *id + "\"");
            }
            slots.emplace(*open, body);
            open.reset();
        } else if (open) {
            body += line;
        }
    }
    if (open) {
        throw Error(ErrorKind::kTemplate, "manual slot \"" + *open + "\" is never closed");
    }
    return slots;
}

std::string preserve_manual_slots(const std::string& fresh, const std::string& previous) {
    const auto kept = extract_manual_slots(previous);
    extract_manual_slots(fresh);
    std::string out;
    std::optional<std::string> open;
    for (const auto& line : split_lines(fresh)) {
        if (auto id = marker_id(line, kManualBegin)) {
            out += line;
            open = *id;
            if (auto it = kept.find(*id); it != kept.end()) {
                out += it->second;
            }
            continue;
        }
        if (auto id = marker_id(line, kManualEnd)) {
            open.reset();
            out += line;
            continue;
        }
        if (open && kept.count(*open) != 0) {
            continue;  // replaced by the preserved body
        }
        out += line;
    }
    return out;
}

void write_artifact(GeneratedArtifact& artifact, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorKind::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
    }
    for (auto& file : artifact.files) {
        const auto path = out_dir / file.path;
        if (std::filesystem::exists(path)) {
            file.text = preserve_manual_slots(file.text, read_file(path));
        }
        write_file(path, file.text);
    }
    write_file(out_dir / "adapter_manifest.json", to_json(artifact.manifest).dump(2) + "\n");
}

// --- metrics -------------------------------------------------------------------------------------

double loc_fraction(std::size_t generated, std::size_t manual) {
    const std::size_t total = generated + manual;
    return total == 0 ? 1.0 : static_cast<double>(generated) / static_cast<double>(total);
}

LocReport loc_report(const GeneratedArtifact& artifact) {
    LocReport report;
    for (const auto& file : artifact.files) {
        bool in_slot = false;
        bool in_block_comment = false;
        for (const auto& raw : split_lines(file.text)) {
            const std::string line = strip(raw);
            if (marker_id(raw, kManualBegin)) {
                in_slot = true;
                continue;
            }
            if (marker_id(raw, kManualEnd)) {
                in_slot = false;
                continue;
            }
            if (in_block_comment) {
                if (line.find("*/") != std::string::npos) in_block_comment = false;
                continue;
            }
            if (line.empty() || line.rfind("//", 0) == 0) continue;
            if (line.rfind("/*", 0) == 0) {
                in_block_comment = line.find("*/") == std::string::npos;
                continue;
            }
            if (in_slot || file.origin == FileOrigin::kManualSlot) {
                ++report.manual_loc;
            } else {
                ++report.generated_loc;
            }
        }
    }
    report.fraction_generated = loc_fraction(report.generated_loc, report.manual_loc);
    return report;
}

MarkerEvents scan_event_markers(const GeneratedArtifact& artifact) {
    MarkerEvents out;
    const std::string sub = "// fnkit:subscribe ";
    const std::string pub = "// fnkit:publish ";
    for (const auto& file : artifact.files) {
        for (const auto& raw : split_lines(file.text)) {
            const std::string line = strip(raw);
            if (line.rfind(sub, 0) == 0) out.subscriptions.push_back(strip(line.substr(sub.size())));
            if (line.rfind(pub, 0) == 0) out.publications.push_back(strip(line.substr(pub.size())));
        }
    }
    return out;
}

}  // namespace fnkit
