// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/integration_model.hpp"

#include "fnkit/signal_catalog.hpp"
#include "json_reader.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <map>
#include <regex>
#include <set>

namespace fnkit {

using nlohmann::json;
using detail::index_path;
using detail::member_path;
using detail::ObjectReader;

std::string_view to_string(Serialization s) { return s == Serialization::kBinaryLe ? "binary-le" : "json-lines"; }

std::optional<Serialization> parse_serialization(std::string_view text) {
    if (text == "binary-le") return Serialization::kBinaryLe;
    if (text == "json-lines") return Serialization::kJsonLines;
    return std::nullopt;
}

std::string_view to_string(ServiceDirection d) { return d == ServiceDirection::kProvided ? "Provided" : "Required"; }

namespace {

std::optional<ServiceDirection> parse_direction(std::string_view text) {
    if (text == "Provided") return ServiceDirection::kProvided;
    if (text == "Required") return ServiceDirection::kRequired;
    return std::nullopt;
}

json parse_document(std::string_view json_text, const char* what) {
    try {
        return json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kJsonSyntax, std::string(what) + " JSON syntax error: " + e.what());
    }
}

void throw_if_findings(const ValidationReport& report, const std::string& message) {
    if (!report.findings.empty()) {
        throw Error(ErrorKind::kSchema, message, report.findings);
    }
}

}  // namespace

// --- platform / topology ----------------------------------------------------------

PlatformDescriptor parse_platform(std::string_view json_text) {
    const json document = parse_document(json_text, "platform");
    ValidationReport report;
    PlatformDescriptor p;
    ObjectReader r(document, "", report);
    if (r.valid()) {
        p.platform_name = r.nonempty_string("PlatformName");
        p.serialization = r.enumeration<Serialization>("Serialization", parse_serialization,
                                                       "{binary-le, json-lines}", Serialization::kJsonLines);
        p.service_grouping_depth = r.count("ServiceGroupingDepth", 1);
        p.id_base = r.integer("IdBase", 0);
        p.transport_label = r.string("TransportLabel");
        r.finish();
    }
    throw_if_findings(report, "invalid platform descriptor");
    return p;
}

ComponentTopology parse_topology(std::string_view json_text) {
    const json document = parse_document(json_text, "topology");
    ValidationReport report;
    ComponentTopology t;
    ObjectReader r(document, "", report);
    if (r.valid()) {
        if (const auto* app = r.member("Application", true)) {
            ObjectReader ar(*app, "Application", report);
            if (ar.valid()) {
                t.application_name = ar.nonempty_string("Name");
                t.application_description = ar.opt_string("Description").value_or("");
                ar.finish();
            }
        }
        t.components = r.list<TopologyComponent>("Components", true, [&](const json& e, const std::string& p) {
            TopologyComponent c;
            ObjectReader cr(e, p, report);
            if (cr.valid()) {
                c.name = cr.nonempty_string("Name");
                c.executable_name = cr.nonempty_string("ExecutableName");
                c.function_group_modes = cr.string_list("FunctionGroupModes", false);
                c.functions = cr.string_list("Functions", true);
                cr.finish();
            }
            return c;
        });
        r.finish();
    }
    throw_if_findings(report, "invalid component topology");
    return t;
}

// --- transform ---------------------------------------------------------------------

std::string default_created_at() {
    std::time_t seconds = 0;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long long value = std::strtoll(env, &end, 10);
        if (end != nullptr && *end == '\0' && value >= 0) {
            seconds = static_cast<std::time_t>(value);
        }
    }
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

std::pair<std::string, std::string> group_signal_path(std::string_view path, std::uint64_t depth) {
    const auto signal = SignalPath::parse(path);
    const auto& segs = signal.segments();
    const std::size_t split = std::min<std::size_t>(std::max<std::uint64_t>(depth, 1), segs.size() - 1);
    const auto join = [&](std::size_t from, std::size_t to) {
        std::string out;
        for (std::size_t i = from; i < to; ++i) {
            if (!out.empty()) out += '_';
            out += segs[i];
        }
        return out;
    };
    return {join(0, split), join(split, segs.size())};
}

IntegrationModel transform(const std::vector<FunctionModel>& functions, const PlatformDescriptor& platform,
                           const ComponentTopology& topology, const TransformOptions& options) {
    if (platform.service_grouping_depth < 1) {
        throw Error(ErrorKind::kInvalidArgument, "ServiceGroupingDepth must be >= 1");
    }
    std::map<std::string, const FunctionModel*> by_name;
    for (const auto& f : functions) {
        if (auto report = validate_function_model(f); !report.valid()) {
            throw Error(ErrorKind::kValidation, "function model \"" + f.name + "\" is invalid", report.findings);
        }
        if (!by_name.emplace(f.name, &f).second) {
            throw Error(ErrorKind::kDuplicate, "function \"" + f.name + "\" given twice");
        }
    }

    // Topology closure: every function placed exactly once.
    std::map<std::string, std::string> placement;
    std::set<std::string> component_names;
    for (const auto& c : topology.components) {
        if (!component_names.insert(c.name).second) {
            throw Error(ErrorKind::kDuplicate, "component \"" + c.name + "\" declared twice in topology");
        }
        for (const auto& fn : c.functions) {
            if (by_name.count(fn) == 0) {
                throw Error(ErrorKind::kUnknownComponent,
                            "topology component \"" + c.name + "\" names unknown function \"" + fn + "\"");
            }
            if (auto [it, inserted] = placement.emplace(fn, c.name); !inserted) {
                throw Error(ErrorKind::kConflict, "function \"" + fn + "\" assigned to both \"" + it->second +
                                                      "\" and \"" + c.name + "\"");
            }
        }
    }
    for (const auto& [name, f] : by_name) {
        if (placement.count(name) == 0) {
            throw Error(ErrorKind::kUnassignedFunction, "function \"" + name + "\" is not assigned to a component");
        }
    }

    // One provider per path across the whole application.
    std::map<std::string, std::string> provider_of;
    for (const auto& [name, f] : by_name) {
        for (const auto& itf : f->interface_data) {
            if (itf.role != InterfaceRole::kProvider) continue;
            if (auto [it, inserted] = provider_of.emplace(itf.name, name); !inserted) {
                throw Error(ErrorKind::kConflict, "signal \"" + itf.name + "\" provided by both \"" + it->second +
                                                      "\" and \"" + name + "\"");
            }
        }
    }

    IntegrationModel model;
    model.meta.created_at = options.created_at.empty() ? default_created_at() : options.created_at;
    model.meta.platform_name = platform.platform_name;
    model.meta.serialization = platform.serialization;
    model.meta.transport_label = platform.transport_label;
    for (const auto& [name, f] : by_name) {
        model.meta.source_function_model_digests.push_back({name, function_model_digest(*f)});
    }
    model.application.name = topology.application_name;
    model.application.description = topology.application_description;

    std::set<std::string> external;
    std::map<std::string, Datatype> named;
    for (const auto& [name, f] : by_name) {
        for (const auto& d : f->declared_datatypes()) {
            const auto type_name = *d.declared_name();
            if (auto [it, inserted] = named.emplace(type_name, d); !inserted && !(it->second == d)) {
                throw Error(ErrorKind::kConflict, "datatype \"" + type_name + "\" declared differently by \"" + name +
                                                      "\" and another function");
            }
        }
    }
    for (auto& [type_name, d] : named) {
        model.datatypes.push_back(d);
    }

    // Group interfaces into services per component.
    struct PendingService {
        std::set<ServiceDirection> directions;
        std::map<std::pair<ServiceDirection, std::string>, ServiceEvent> events;
    };
    for (const auto& tc : topology.components) {
        IntegrationComponent component;
        component.name = tc.name;
        component.executable_name = tc.executable_name;
        component.function_group_modes = tc.function_group_modes;
        std::map<std::string, PendingService> groups;
        for (const auto& fn : tc.functions) {
            const FunctionModel& f = *by_name.at(fn);
            component.functions.push_back(f);
            component.parameters.insert(component.parameters.end(), f.parameters.begin(), f.parameters.end());
            for (const auto& itf : f.interface_data) {
                const auto direction =
                    itf.role == InterfaceRole::kProvider ? ServiceDirection::kProvided : ServiceDirection::kRequired;
                if (direction == ServiceDirection::kRequired && provider_of.count(itf.name) == 0) {
                    external.insert(itf.name);
                }
                auto [service, event] = group_signal_path(itf.name, platform.service_grouping_depth);
                auto& group = groups[service];
                group.directions.insert(direction);
                // Two functions of one component consuming one path share the event.
                group.events.emplace(std::pair{direction, event}, ServiceEvent{event, 0, itf.datatype, itf.name});
            }
        }
        for (auto& [group_name, group] : groups) {
            const bool mixed = group.directions.size() > 1;
            for (const auto direction : group.directions) {
                ServiceInterface s;
                s.name = mixed ? group_name + "_" + std::string(to_string(direction)) : group_name;
                s.direction = direction;
                for (auto& [key, event] : group.events) {
                    if (key.first == direction) s.events.push_back(event);
                }
                component.service_interfaces.push_back(std::move(s));
            }
        }
        std::sort(component.service_interfaces.begin(), component.service_interfaces.end(),
                  [](const ServiceInterface& a, const ServiceInterface& b) { return a.name < b.name; });
        model.components.push_back(std::move(component));
    }
    std::sort(model.components.begin(), model.components.end(),
              [](const IntegrationComponent& a, const IntegrationComponent& b) { return a.name < b.name; });

    // Deterministic ids: per unique service name, and per event name within it.
    std::map<std::string, std::set<std::string>> events_by_service;
    for (const auto& c : model.components) {
        for (const auto& s : c.service_interfaces) {
            auto& names = events_by_service[s.name];
            for (const auto& e : s.events) names.insert(e.name);
        }
    }
    std::map<std::string, std::int64_t> service_ids;
    std::int64_t next = platform.id_base;
    for (const auto& [name, events] : events_by_service) {
        service_ids[name] = next++;
    }
    for (auto& c : model.components) {
        for (auto& s : c.service_interfaces) {
            s.service_id = service_ids.at(s.name);
            const auto& names = events_by_service.at(s.name);
            for (auto& e : s.events) {
                e.event_id = 1 + static_cast<std::int64_t>(std::distance(names.begin(), names.find(e.name)));
            }
        }
    }
    model.application.external_signals.assign(external.begin(), external.end());
    return model;
}

// --- queries ------------------------------------------------------------------------

const ServiceEvent* ServiceInterface::find_event(std::string_view event_name) const {
    auto it = std::find_if(events.begin(), events.end(), [&](const ServiceEvent& e) { return e.name == event_name; });
    return it == events.end() ? nullptr : &*it;
}

const IntegrationComponent* IntegrationModel::find_component(std::string_view name) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const IntegrationComponent& c) { return c.name == name; });
    return it == components.end() ? nullptr : &*it;
}

std::vector<EventRef> IntegrationModel::events_of(const IntegrationComponent& component) const {
    std::vector<EventRef> out;
    for (const auto& s : component.service_interfaces) {
        for (const auto& e : s.events) {
            out.push_back(EventRef{s.name, e.name, e.source_path, s.direction, &e});
        }
    }
    return out;
}

EntityCounts count_entities(const IntegrationModel& model) {
    std::set<std::string> executables;
    std::set<std::string> services;
    std::set<std::pair<std::string, std::string>> events;
    for (const auto& c : model.components) {
        executables.insert(c.executable_name);
        for (const auto& s : c.service_interfaces) {
            services.insert(s.name);
            for (const auto& e : s.events) events.emplace(s.name, e.name);
        }
    }
    return {executables.size(), services.size(), events.size()};
}

// --- validation -----------------------------------------------------------------------

ValidationReport validate_integration(const IntegrationModel& model) {
    ValidationReport report;
    std::set<std::string> type_names;
    for (std::size_t i = 0; i < model.datatypes.size(); ++i) {
        const auto name = model.datatypes[i].declared_name();
        const auto path = index_path("DataTypes", i);
        if (!name) {
            if (!model.datatypes[i].is<TypeReference>()) {
                report.error(path, "schema", "DataTypes entries must be named");
            }
            continue;
        }
        if (!type_names.insert(*name).second) {
            report.error(path, "duplicate", "duplicate datatype \"" + *name + "\"");
        }
    }

    std::set<std::string> provided_paths;
    for (const auto& c : model.components) {
        for (const auto& s : c.service_interfaces) {
            if (s.direction == ServiceDirection::kProvided) {
                for (const auto& e : s.events) provided_paths.insert(e.source_path);
            }
        }
    }
    const std::set<std::string> external(model.application.external_signals.begin(),
                                         model.application.external_signals.end());
    for (const auto& p : external) {
        if (!SignalPath::try_parse(p)) {
            report.error("ApplicationInformation.ExternalSignals", "schema",
                         "\"" + p + "\" is not a valid signal path");
        }
        if (provided_paths.count(p) != 0) {
            report.error("ApplicationInformation.ExternalSignals", "closure",
                         "\"" + p + "\" is listed as external but provided inside the application");
        }
    }

    std::map<std::string, std::string> digests;
    for (const auto& d : model.meta.source_function_model_digests) digests.emplace(d.function, d.digest);

    std::map<std::int64_t, std::string> id_owner;
    std::map<std::string, std::int64_t> name_id;
    std::set<std::string> component_names;
    for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
        const auto& c = model.components[ci];
        const auto cpath = index_path("ComponentList", ci);
        if (!component_names.insert(c.name).second) {
            report.error(member_path(cpath, "Name"), "duplicate", "duplicate component \"" + c.name + "\"");
        }
        if (c.executable_name.empty()) {
            report.error(member_path(cpath, "ExecutableName"), "schema", "ExecutableName must not be empty");
        }
        std::set<std::string> service_names;
        // (direction, path) -> number of bindings in this component
        std::map<std::pair<ServiceDirection, std::string>, int> bindings;
        for (std::size_t si = 0; si < c.service_interfaces.size(); ++si) {
            const auto& s = c.service_interfaces[si];
            const auto spath = index_path(member_path(cpath, "ServiceInterfaceList"), si);
            if (!service_names.insert(s.name).second) {
                report.error(member_path(spath, "Name"), "duplicate",
                             "service \"" + s.name + "\" appears twice in component \"" + c.name + "\"");
            }
            if (auto [it, inserted] = id_owner.emplace(s.service_id, s.name); !inserted && it->second != s.name) {
                report.error(member_path(spath, "ServiceId"), "duplicate-id",
                             "service id " + std::to_string(s.service_id) + " used by \"" + it->second + "\" and \"" +
                                 s.name + "\"");
            }
            if (auto [it, inserted] = name_id.emplace(s.name, s.service_id); !inserted && it->second != s.service_id) {
                report.error(member_path(spath, "ServiceId"), "duplicate-id",
                             "service \"" + s.name + "\" carries two different ids");
            }
            std::set<std::string> event_names;
            std::set<std::int64_t> event_ids;
            for (std::size_t ei = 0; ei < s.events.size(); ++ei) {
                const auto& e = s.events[ei];
                const auto epath = index_path(member_path(spath, "Events"), ei);
                if (!event_names.insert(e.name).second) {
                    report.error(member_path(epath, "Name"), "duplicate", "duplicate event \"" + e.name + "\"");
                }
                if (!event_ids.insert(e.event_id).second) {
                    report.error(member_path(epath, "EventId"), "duplicate-id",
                                 "duplicate event id " + std::to_string(e.event_id));
                }
                if (!SignalPath::try_parse(e.source_path)) {
                    report.error(member_path(epath, "SourcePath"), "schema",
                                 "\"" + e.source_path + "\" is not a valid signal path");
                }
                if (const auto* r = e.datatype.get_if<TypeReference>(); r && type_names.count(r->type_name) == 0) {
                    report.error(member_path(epath, "Datatype"), "unresolved-reference",
                                 "type \"" + r->type_name + "\" is not in DataTypes");
                }
                ++bindings[{s.direction, e.source_path}];
                if (s.direction == ServiceDirection::kRequired && provided_paths.count(e.source_path) == 0 &&
                    external.count(e.source_path) == 0) {
                    report.error(epath, "closure",
                                 "required event \"" + s.name + "." + e.name + "\" (" + e.source_path +
                                     ") has no provider and is not an external signal");
                }
            }
        }
        for (std::size_t fi = 0; fi < c.functions.size(); ++fi) {
            const auto& f = c.functions[fi];
            const auto fpath = index_path(member_path(cpath, "FunctionList"), fi);
            if (const auto it = digests.find(f.name); it == digests.end()) {
                report.error(member_path(fpath, "Name"), "digest",
                             "function \"" + f.name + "\" has no source digest");
            } else if (it->second != function_model_digest(f)) {
                report.error(member_path(fpath, "Name"), "digest",
                             "function \"" + f.name + "\" does not match its source digest");
            }
            for (const auto& finding : validate_function_model(f).findings) {
                if (finding.severity == Severity::kError) {
                    report.error(member_path(fpath, finding.path), finding.code, finding.message);
                }
            }
            for (const auto& itf : f.interface_data) {
                const auto direction =
                    itf.role == InterfaceRole::kProvider ? ServiceDirection::kProvided : ServiceDirection::kRequired;
                const auto it = bindings.find({direction, itf.name});
                if (it == bindings.end()) {
                    report.error(fpath, "closure",
                                 "interface \"" + itf.name + "\" of \"" + f.name + "\" has no " +
                                     std::string(to_string(direction)) + " event binding");
                } else if (it->second > 1) {
                    report.error(fpath, "closure",
                                 "interface \"" + itf.name + "\" of \"" + f.name + "\" is bound " +
                                     std::to_string(it->second) + " times");
                }
            }
        }
    }
    return report;
}

// --- JSON mapping -----------------------------------------------------------------------

namespace {

json to_json(const ServiceInterface& s) {
    json events = json::array();
    for (const auto& e : s.events) {
        events.push_back({{"Name", e.name},
                          {"EventId", e.event_id},
                          {"Datatype", fnkit::to_json(e.datatype)},
                          {"SourcePath", e.source_path}});
    }
    json j{{"Name", s.name}, {"ServiceId", s.service_id}, {"Direction", to_string(s.direction)}, {"Events", events}};
    if (!s.methods.empty()) {
        json methods = json::array();
        for (const auto& m : s.methods) methods.push_back({{"Name", m.name}, {"Description", m.description}});
        j["Methods"] = methods;
    }
    return j;
}

ServiceInterface service_from_json(const json& j, const std::string& path, ValidationReport& report) {
    ServiceInterface s;
    ObjectReader r(j, path, report);
    if (!r.valid()) return s;
    s.name = r.nonempty_string("Name");
    s.service_id = r.integer("ServiceId", 0);
    s.direction = r.enumeration<ServiceDirection>("Direction", parse_direction, "{Provided, Required}",
                                                  ServiceDirection::kProvided);
    s.events = r.list<ServiceEvent>("Events", true, [&](const json& e, const std::string& p) {
        ServiceEvent ev;
        ObjectReader er(e, p, report);
        if (er.valid()) {
            ev.name = er.nonempty_string("Name");
            ev.event_id = er.integer("EventId", 1);
            if (const auto* d = er.member("Datatype", true)) {
                ev.datatype = datatype_from_json(*d, er.at("Datatype"), report);
            }
            ev.source_path = er.string("SourcePath");
            if (er.has("SourcePath") && e.at("SourcePath").is_string() && !SignalPath::try_parse(ev.source_path)) {
                report.error(er.at("SourcePath"), "schema", "\"" + ev.source_path + "\" is not a signal path");
            }
            er.finish();
        }
        return ev;
    });
    s.methods = r.list<NamedRecord>("Methods", false, [&](const json& e, const std::string& p) {
        NamedRecord m;
        ObjectReader mr(e, p, report);
        m.name = mr.nonempty_string("Name");
        m.description = mr.string("Description");
        mr.finish();
        return m;
    });
    r.finish();
    return s;
}

constexpr const char* kTimestampPattern = "^[0-9]{4}-[0-9]{2}-[0-9]{2}T[0-9]{2}:[0-9]{2}:[0-9]{2}Z$";
constexpr const char* kDigestPattern = "^sha256:[0-9a-f]{64}$";

}  // namespace

json to_json(const IntegrationModel& model) {
    json digests = json::array();
    for (const auto& d : model.meta.source_function_model_digests) {
        digests.push_back({{"Function", d.function}, {"Digest", d.digest}});
    }
    json components = json::array();
    for (const auto& c : model.components) {
        json functions = json::array();
        for (const auto& f : c.functions) functions.push_back(fnkit::to_json(f));
        json services = json::array();
        for (const auto& s : c.service_interfaces) services.push_back(to_json(s));
        json cj{{"Name", c.name},
                {"ExecutableName", c.executable_name},
                {"FunctionGroupModes", c.function_group_modes},
                {"FunctionList", functions},
                {"ServiceInterfaceList", services}};
        if (!c.parameters.empty()) {
            json params = json::array();
            for (const auto& p : c.parameters) params.push_back(fnkit::to_json(p));
            cj["ParameterList"] = params;
        }
        components.push_back(cj);
    }
    json j{{"MetaInformation",
            {{"ToolVersion", model.meta.tool_version},
             {"CreatedAt", model.meta.created_at},
             {"SourceFunctionModelDigests", digests},
             {"PlatformName", model.meta.platform_name},
             {"Serialization", to_string(model.meta.serialization)},
             {"TransportLabel", model.meta.transport_label}}},
           {"ApplicationInformation",
            {{"Name", model.application.name},
             {"Description", model.application.description},
             {"ExternalSignals", model.application.external_signals}}},
           {"ComponentList", components}};
    if (!model.datatypes.empty()) {
        json types = json::array();
        for (const auto& d : model.datatypes) types.push_back(fnkit::to_json(d));
        j["DataTypes"] = types;
    }
    return j;
}

IntegrationModel decode_integration_model(const json& document) {
    ValidationReport report;
    IntegrationModel m;
    ObjectReader r(document, "", report);
    if (r.valid()) {
        if (const auto* meta = r.member("MetaInformation", true)) {
            ObjectReader mr(*meta, "MetaInformation", report);
            if (mr.valid()) {
                m.meta.tool_version = mr.nonempty_string("ToolVersion");
                m.meta.created_at = mr.string("CreatedAt");
                static const std::regex ts(kTimestampPattern);
                if (mr.has("CreatedAt") && !std::regex_match(m.meta.created_at, ts)) {
                    report.error(mr.at("CreatedAt"), "schema", "CreatedAt must be a UTC timestamp");
                }
                m.meta.source_function_model_digests = mr.list<SourceDigest>(
                    "SourceFunctionModelDigests", true, [&](const json& e, const std::string& p) {
                        SourceDigest d;
                        ObjectReader dr(e, p, report);
                        d.function = dr.nonempty_string("Function");
                        d.digest = dr.string("Digest");
                        static const std::regex digest(kDigestPattern);
                        if (dr.has("Digest") && !std::regex_match(d.digest, digest)) {
                            report.error(dr.at("Digest"), "schema", "Digest must be sha256:<64 hex>");
                        }
                        dr.finish();
                        return d;
                    });
                m.meta.platform_name = mr.nonempty_string("PlatformName");
                m.meta.serialization = mr.enumeration<Serialization>(
                    "Serialization", parse_serialization, "{binary-le, json-lines}", Serialization::kJsonLines);
                m.meta.transport_label = mr.string("TransportLabel");
                mr.finish();
            }
        }
        if (const auto* app = r.member("ApplicationInformation", true)) {
            ObjectReader ar(*app, "ApplicationInformation", report);
            if (ar.valid()) {
                m.application.name = ar.nonempty_string("Name");
                m.application.description = ar.string("Description");
                m.application.external_signals = ar.string_list("ExternalSignals", true);
                ar.finish();
            }
        }
        m.components = r.list<IntegrationComponent>("ComponentList", true, [&](const json& e, const std::string& p) {
            IntegrationComponent c;
            ObjectReader cr(e, p, report);
            if (!cr.valid()) return c;
            c.name = cr.nonempty_string("Name");
            c.executable_name = cr.nonempty_string("ExecutableName");
            c.function_group_modes = cr.string_list("FunctionGroupModes", true);
            c.functions = cr.list<FunctionModel>("FunctionList", true, [&](const json& fe, const std::string& fp) {
                return function_model_from_json_fragment(fe, fp, report);
            });
            c.parameters = cr.list<Parameter>("ParameterList", false, [&](const json& pe, const std::string& pp) {
                return parameter_from_json(pe, pp, report);
            });
            c.service_interfaces = cr.list<ServiceInterface>(
                "ServiceInterfaceList", true,
                [&](const json& se, const std::string& sp) { return service_from_json(se, sp, report); });
            cr.finish();
            return c;
        });
        m.datatypes = r.list<Datatype>("DataTypes", false, [&](const json& e, const std::string& p) {
            return datatype_from_json(e, p, report);
        });
        r.finish();
    }
    if (!report.findings.empty()) {
        throw Error(ErrorKind::kSchema, "integration model violates the schema", report.findings);
    }
    return m;
}

IntegrationModel parse_integration_model(std::string_view json_text) {
    const json document = parse_document(json_text, "integration model");
    IntegrationModel model = decode_integration_model(document);
    ValidationReport report = validate_integration(model);
    if (!report.valid()) {
        const bool dangling = std::any_of(report.findings.begin(), report.findings.end(), [](const Finding& f) {
            return f.severity == Severity::kError && f.code == "unresolved-reference";
        });
        throw Error(dangling ? ErrorKind::kUnresolvedReference : ErrorKind::kValidation,
                    "integration model is invalid", report.findings);
    }
    return model;
}

std::string serialize_integration_model(const IntegrationModel& model) { return to_json(model).dump(); }

std::string emit_integration_schema() {
    json defs = function_schema_defs();
    const auto ref = [](const char* def) { return json{{"$ref", std::string("#/$defs/") + def}}; };
    const auto obj = [](json properties, std::vector<std::string> required) {
        return json{{"type", "object"},
                    {"properties", std::move(properties)},
                    {"required", required},
                    {"additionalProperties", false}};
    };
    const json str{{"type", "string"}};
    const json nonempty{{"type", "string"}, {"minLength", 1}};
    const json str_list{{"type", "array"}, {"items", str}};

    defs["ServiceEvent"] = obj({{"Name", nonempty},
                                {"EventId", {{"type", "integer"}, {"minimum", 0}}},
                                {"Datatype", ref("Datatype")},
                                {"SourcePath", ref("SignalPath")}},
                               {"Name", "EventId", "Datatype", "SourcePath"});
    defs["ServiceInterface"] = obj({{"Name", nonempty},
                                    {"ServiceId", {{"type", "integer"}}},
                                    {"Direction", {{"type", "string"}, {"enum", {"Provided", "Required"}}}},
                                    {"Events", {{"type", "array"}, {"items", ref("ServiceEvent")}}},
                                    {"Methods", {{"type", "array"}, {"items", ref("NamedRecord")}}}},
                                   {"Name", "ServiceId", "Direction", "Events"});
    defs["Component"] = obj({{"Name", nonempty},
                             {"ExecutableName", nonempty},
                             {"FunctionGroupModes", str_list},
                             {"FunctionList", {{"type", "array"}, {"items", ref("Function")}}},
                             {"ParameterList", {{"type", "array"}, {"items", ref("Parameter")}}},
                             {"ServiceInterfaceList", {{"type", "array"}, {"items", ref("ServiceInterface")}}}},
                            {"Name", "ExecutableName", "FunctionGroupModes", "FunctionList", "ServiceInterfaceList"});
    defs["MetaInformation"] = obj(
        {{"ToolVersion", nonempty},
         {"CreatedAt", {{"type", "string"}, {"pattern", kTimestampPattern}}},
         {"SourceFunctionModelDigests",
          {{"type", "array"},
           {"items", obj({{"Function", nonempty}, {"Digest", {{"type", "string"}, {"pattern", kDigestPattern}}}},
                         {"Function", "Digest"})}}},
         {"PlatformName", nonempty},
         {"Serialization", {{"type", "string"}, {"enum", {"binary-le", "json-lines"}}}},
         {"TransportLabel", str}},
        {"ToolVersion", "CreatedAt", "SourceFunctionModelDigests", "PlatformName", "Serialization",
         "TransportLabel"});
    defs["ApplicationInformation"] = obj(
        {{"Name", nonempty}, {"Description", str}, {"ExternalSignals", {{"type", "array"}, {"items", ref("SignalPath")}}}},
        {"Name", "Description", "ExternalSignals"});
    defs["NamedDatatype"] = {{"oneOf",
                              {ref("TypeReference"), ref("StructDatatype"), ref("ArrayDatatype"),
                               ref("EnumerationDatatype")}}};
    defs["ApplicationModel"] =
        obj({{"MetaInformation", ref("MetaInformation")},
             {"ApplicationInformation", ref("ApplicationInformation")},
             {"ComponentList", {{"type", "array"}, {"items", ref("Component")}}},
             {"DataTypes", {{"type", "array"}, {"items", ref("NamedDatatype")}}}},
            {"MetaInformation", "ApplicationInformation", "ComponentList"});

    json schema{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"$id", "urn:fnkit:integration-model"},
                {"title", "Integration model"},
                {"$ref", "#/$defs/ApplicationModel"},
                {"$defs", defs}};
    return schema.dump(2) + "\n";
}

// --- digests --------------------------------------------------------------------------------

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::kIo, "sha256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0x0f];
    }
    return out;
}

std::string function_model_digest(const FunctionModel& model) {
    return "sha256:" + sha256_hex(serialize_function_model(model));
}

}  // namespace fnkit
