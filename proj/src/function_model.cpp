// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/function_model.hpp"

#include "fnkit/signal_catalog.hpp"
#include "json_reader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>
#include <set>

namespace fnkit {

using nlohmann::json;
using detail::index_path;
using detail::member_path;
using detail::ObjectReader;

namespace {

constexpr const char* kAsilAllowed = "{QM, A, B, C, D}";
constexpr const char* kRoleAllowed = "{Consumer, Provider}";
constexpr const char* kRangeActionAllowed = "{Default, Init}";
constexpr const char* kAttributeAllowed = "{NA, Normal, LearningParameter}";
constexpr const char* kBaseAllowed = "{uint8, uint16, uint32, uint64, int8, int16, int32, int64, float32, float64}";
constexpr const char* kTypeNamePattern = "^[A-Za-z_][A-Za-z0-9_]*$";
constexpr const char* kFunctionNamePattern = "^[A-Za-z][A-Za-z0-9]*$";

bool is_type_name(const std::string& text) {
    static const std::regex re(kTypeNamePattern);
    return std::regex_match(text, re);
}

std::optional<InterfaceRole> parse_role(std::string_view text) {
    if (text == "Consumer") return InterfaceRole::kConsumer;
    if (text == "Provider") return InterfaceRole::kProvider;
    return std::nullopt;
}

std::optional<RangeErrorAction> parse_range_action(std::string_view text) {
    if (text == "Default") return RangeErrorAction::kDefault;
    if (text == "Init") return RangeErrorAction::kInit;
    return std::nullopt;
}

std::optional<ParameterAttribute> parse_attribute(std::string_view text) {
    if (text == "NA") return ParameterAttribute::kNA;
    if (text == "Normal") return ParameterAttribute::kNormal;
    if (text == "LearningParameter") return ParameterAttribute::kLearningParameter;
    return std::nullopt;
}

std::optional<std::string> opt_type_name(ObjectReader& r) {
    auto name = r.opt_string("TypeName");
    if (name && !is_type_name(*name)) {
        r.report().error(r.at("TypeName"), "schema", "\"" + *name + "\" does not match " + kTypeNamePattern);
    }
    return name;
}

std::string required_type_name(ObjectReader& r, std::string_view key) {
    auto name = r.string(key);
    if (r.has(key) && !is_type_name(name)) {
        r.report().error(r.at(key), "schema", "\"" + name + "\" does not match " + kTypeNamePattern);
    }
    return name;
}

// --- decode -----------------------------------------------------------------

WatchdogSpec watchdog_from_json(const json& j, const std::string& path, ValidationReport& report) {
    WatchdogSpec spec;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return spec;
    }
    spec.supervision_type = r.enumeration<SupervisionType>(
        "SupervisionType", [](std::string_view t) { return SupervisionType::parse(t); },
        "{None, Alive, Deadline, Logical, Alive+Deadline, Alive+Logical, Deadline+Logical, Alive+Deadline+Logical}",
        SupervisionType{});
    if (const auto* a = r.member("AliveLimits", false)) {
        ObjectReader ar(*a, r.at("AliveLimits"), report);
        if (ar.valid()) {
            AliveLimits limits;
            limits.min_indications = ar.count("MinIndications");
            limits.max_indications = ar.count("MaxIndications");
            limits.reference_window = ar.number("ReferenceWindow", 0.0);
            if (ar.has("ReferenceWindow") && limits.reference_window <= 0.0) {
                report.error(ar.at("ReferenceWindow"), "schema", "must be > 0");
            }
            limits.error_name = ar.nonempty_string("ErrorName");
            ar.finish();
            spec.alive_limits = limits;
        }
    }
    if (const auto* d = r.member("DeadlineLimits", false)) {
        ObjectReader dr(*d, r.at("DeadlineLimits"), report);
        if (dr.valid()) {
            DeadlineLimits limits;
            limits.min_duration = dr.number("MinDuration", 0.0);
            limits.max_duration = dr.number("MaxDuration", 0.0);
            limits.error_name = dr.nonempty_string("ErrorName");
            dr.finish();
            spec.deadline_limits = limits;
        }
    }
    if (const auto* l = r.member("LogicalCheck", false)) {
        ObjectReader lr(*l, r.at("LogicalCheck"), report);
        if (lr.valid()) {
            LogicalCheck check;
            check.expected_order = lr.string_list("ExpectedOrder", true, 1);
            check.error_name = lr.nonempty_string("ErrorName");
            lr.finish();
            spec.logical_check = check;
        }
    }
    r.finish();
    // Limits present iff the matching supervision is selected.
    const auto iff = [&](bool selected, bool present, const char* key) {
        if (selected && !present) {
            report.error(member_path(path, key), "schema", "required by SupervisionType");
        } else if (!selected && present) {
            report.error(member_path(path, key), "schema", "not allowed by SupervisionType");
        }
    };
    if (r.has("SupervisionType") && SupervisionType::parse(j.at("SupervisionType").is_string()
                                                               ? j.at("SupervisionType").get<std::string>()
                                                               : std::string{})) {
        iff(spec.supervision_type.alive, r.has("AliveLimits"), "AliveLimits");
        iff(spec.supervision_type.deadline, r.has("DeadlineLimits"), "DeadlineLimits");
        iff(spec.supervision_type.logical, r.has("LogicalCheck"), "LogicalCheck");
    }
    return spec;
}

NamedRecord named_record_from_json(const json& j, const std::string& path, ValidationReport& report) {
    NamedRecord rec;
    ObjectReader r(j, path, report);
    rec.name = r.nonempty_string("Name");
    rec.description = r.string("Description");
    r.finish();
    return rec;
}

InterfaceDatatype interface_from_json(const json& j, const std::string& path, ValidationReport& report) {
    InterfaceDatatype itf;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return itf;
    }
    itf.name = r.string("Name");
    if (r.has("Name") && j.at("Name").is_string() && !SignalPath::try_parse(itf.name)) {
        report.error(r.at("Name"), "schema", "\"" + itf.name + "\" is not a dot-separated signal path");
    }
    itf.description = r.string("Description");
    itf.role = r.enumeration<InterfaceRole>("Role", parse_role, kRoleAllowed, InterfaceRole::kConsumer);
    itf.kind = r.nonempty_string("Type");
    if (const auto* d = r.member("Datatype", true)) {
        itf.datatype = datatype_from_json(*d, r.at("Datatype"), report);
    }
    itf.range_error_action =
        r.opt_enumeration<RangeErrorAction>("RangeErrorAction", false, parse_range_action, kRangeActionAllowed);
    itf.timeout_value = r.opt_number("TimeoutValue");
    if (itf.timeout_value && *itf.timeout_value <= 0.0) {
        report.error(r.at("TimeoutValue"), "schema", "must be > 0");
    }
    itf.timeout_error = r.opt_string("TimeoutError");
    itf.asil = r.enumeration<AsilLevel>("AsilInfo", parse_asil, kAsilAllowed, AsilLevel::kQM);
    r.finish();
    if (r.has("TimeoutValue") != r.has("TimeoutError")) {
        report.error(path, "schema", "TimeoutValue and TimeoutError must be given together");
    }
    return itf;
}

ErrorSpec error_from_json(const json& j, const std::string& path, ValidationReport& report) {
    ErrorSpec e;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return e;
    }
    e.name = r.nonempty_string("Name");
    if (const auto* d = r.member("Datatype", true)) {
        e.datatype = datatype_from_json(*d, r.at("Datatype"), report);
    }
    e.maturation_time = r.number("MaturationTime", 0.0);
    e.severity = r.string("Severity");
    e.reset_time = r.number("ResetTime", 0.0);
    e.reset_condition = r.string("ResetCondition");
    e.description = r.string("Description");
    e.dependencies = r.string_list("Dependencies", false);
    r.finish();
    return e;
}

SafetyReaction safety_from_json(const json& j, const std::string& path, ValidationReport& report) {
    SafetyReaction s;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return s;
    }
    s.name = r.nonempty_string("Name");
    if (const auto* d = r.member("Datatype", true)) {
        s.datatype = datatype_from_json(*d, r.at("Datatype"), report);
    }
    s.error_list = r.string_list("ErrorList", true, 1);
    s.description = r.string("Description");
    r.finish();
    return s;
}

SchedulingInfo scheduling_from_json(const json& j, const std::string& path, ValidationReport& report) {
    SchedulingInfo s;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return s;
    }
    s.run_type = r.nonempty_string("RunType");
    s.cycle_time = r.number("CycleTime", 0.0);
    s.description = r.string("Description");
    s.initial_offset = r.opt_number("InitialOffset", false, 0.0);
    s.priority = r.opt_integer("Priority");
    s.scheduling_hint = r.opt_string("FunctionScheduling");
    s.debounce_time = r.opt_number("DebounceTime", false, 0.0);
    s.implemented_asil = r.enumeration<AsilLevel>("ImplementedAsil", parse_asil, kAsilAllowed, AsilLevel::kQM);
    s.previous_runnable = r.opt_string("PreviousRunnable");
    if (const auto* w = r.member("Supervision", true)) {
        s.supervision = watchdog_from_json(*w, r.at("Supervision"), report);
    }
    s.stack_size = r.opt_count("StackSize");
    r.finish();
    return s;
}

// --- encode -----------------------------------------------------------------

json to_json(const WatchdogSpec& w) {
    json j;
    j["SupervisionType"] = w.supervision_type.to_string();
    if (w.alive_limits) {
        j["AliveLimits"] = {{"MinIndications", w.alive_limits->min_indications},
                            {"MaxIndications", w.alive_limits->max_indications},
                            {"ReferenceWindow", w.alive_limits->reference_window},
                            {"ErrorName", w.alive_limits->error_name}};
    }
    if (w.deadline_limits) {
        j["DeadlineLimits"] = {{"MinDuration", w.deadline_limits->min_duration},
                               {"MaxDuration", w.deadline_limits->max_duration},
                               {"ErrorName", w.deadline_limits->error_name}};
    }
    if (w.logical_check) {
        j["LogicalCheck"] = {{"ExpectedOrder", w.logical_check->expected_order},
                             {"ErrorName", w.logical_check->error_name}};
    }
    return j;
}

json to_json(const NamedRecord& r) { return {{"Name", r.name}, {"Description", r.description}}; }

json to_json(const InterfaceDatatype& i) {
    json j{{"Name", i.name},       {"Description", i.description},      {"Role", to_string(i.role)},
           {"Type", i.kind},       {"Datatype", to_json(i.datatype)},   {"AsilInfo", to_string(i.asil)}};
    if (i.range_error_action) j["RangeErrorAction"] = to_string(*i.range_error_action);
    if (i.timeout_value) j["TimeoutValue"] = *i.timeout_value;
    if (i.timeout_error) j["TimeoutError"] = *i.timeout_error;
    return j;
}

json to_json(const ErrorSpec& e) {
    json j{{"Name", e.name},
           {"Datatype", to_json(e.datatype)},
           {"MaturationTime", e.maturation_time},
           {"Severity", e.severity},
           {"ResetTime", e.reset_time},
           {"ResetCondition", e.reset_condition},
           {"Description", e.description}};
    if (!e.dependencies.empty()) j["Dependencies"] = e.dependencies;
    return j;
}

json to_json(const SafetyReaction& s) {
    return {{"Name", s.name},
            {"Datatype", to_json(s.datatype)},
            {"ErrorList", s.error_list},
            {"Description", s.description}};
}

json to_json(const SchedulingInfo& s) {
    json j{{"RunType", s.run_type},
           {"CycleTime", s.cycle_time},
           {"Description", s.description},
           {"ImplementedAsil", to_string(s.implemented_asil)},
           {"Supervision", to_json(s.supervision)}};
    if (s.initial_offset) j["InitialOffset"] = *s.initial_offset;
    if (s.priority) j["Priority"] = *s.priority;
    if (s.scheduling_hint) j["FunctionScheduling"] = *s.scheduling_hint;
    if (s.debounce_time) j["DebounceTime"] = *s.debounce_time;
    if (s.previous_runnable) j["PreviousRunnable"] = *s.previous_runnable;
    if (s.stack_size) j["StackSize"] = *s.stack_size;
    return j;
}

template <typename T>
json list_to_json(const std::vector<T>& items) {
    json out = json::array();
    for (const auto& item : items) {
        out.push_back(to_json(item));
    }
    return out;
}

// --- validation helpers -------------------------------------------------------

using NamedTypes = std::map<std::string, const Datatype*>;

void collect_named(const Datatype& d, NamedTypes& out) {
    if (auto name = d.declared_name()) {
        out.emplace(*name, &d);
    }
    if (const auto* s = d.get_if<StructDatatype>()) {
        for (const auto& f : s->fields) collect_named(*f.datatype, out);
    } else if (const auto* a = d.get_if<ArrayDatatype>()) {
        collect_named(*a->element, out);
    }
}

NamedTypes named_types(const FunctionModel& m) {
    NamedTypes out;
    for (const auto& i : m.interface_data) collect_named(i.datatype, out);
    for (const auto& p : m.parameters) collect_named(p.datatype, out);
    for (const auto& e : m.errors) collect_named(e.datatype, out);
    for (const auto& s : m.safety_reactions) collect_named(s.datatype, out);
    return out;
}

std::string fmt(double v) {
    json j = v;
    return j.dump();
}

void validate_datatype(const Datatype& d, const std::string& path, const NamedTypes& named, ValidationReport& report) {
    if (const auto* n = d.get_if<NumericalDatatype>()) {
        if (n->min > n->max) {
            report.error(path, "range", "Min " + fmt(n->min) + " > Max " + fmt(n->max));
        } else if (n->default_value < n->min || n->default_value > n->max) {
            report.error(member_path(path, "Default"), "range",
                         "Default " + fmt(n->default_value) + " outside [" + fmt(n->min) + ", " + fmt(n->max) + "]");
        }
        const double lo = base_lowest(n->base);
        const double hi = base_highest(n->base);
        for (const auto& [key, value] : {std::pair{"Min", n->min}, {"Max", n->max}, {"Default", n->default_value}}) {
            if (!std::isfinite(value) || value < lo || value > hi) {
                report.error(member_path(path, key), "representable",
                             fmt(value) + " not representable in " + std::string(to_string(n->base)));
            } else if (is_integral(n->base) && std::floor(value) != value) {
                report.error(member_path(path, key), "representable",
                             fmt(value) + " is not an integer for " + std::string(to_string(n->base)));
            }
        }
    } else if (const auto* t = d.get_if<TextDatatype>()) {
        if (t->default_value.size() > t->max_length) {
            report.error(member_path(path, "Default"), "range", "default text longer than MaxLength");
        }
    } else if (const auto* s = d.get_if<StructDatatype>()) {
        std::set<std::string> names;
        for (std::size_t i = 0; i < s->fields.size(); ++i) {
            const auto fpath = index_path(member_path(path, "Fields"), i);
            if (!names.insert(s->fields[i].name).second) {
                report.error(fpath, "duplicate", "duplicate field name \"" + s->fields[i].name + "\"");
            }
            validate_datatype(*s->fields[i].datatype, member_path(fpath, "Datatype"), named, report);
        }
    } else if (const auto* a = d.get_if<ArrayDatatype>()) {
        if (a->length < 1) {
            report.error(member_path(path, "Length"), "range", "array length must be >= 1");
        }
        validate_datatype(*a->element, member_path(path, "Element"), named, report);
    } else if (const auto* e = d.get_if<EnumerationDatatype>()) {
        std::set<std::int64_t> values;
        std::set<std::string> names;
        for (std::size_t i = 0; i < e->literals.size(); ++i) {
            const auto lpath = index_path(member_path(path, "Literals"), i);
            if (!values.insert(e->literals[i].value).second) {
                report.error(lpath, "duplicate", "duplicate literal value " + std::to_string(e->literals[i].value));
            }
            if (!names.insert(e->literals[i].name).second) {
                report.error(lpath, "duplicate", "duplicate literal name \"" + e->literals[i].name + "\"");
            }
        }
    } else if (const auto* r = d.get_if<TypeReference>()) {
        if (named.count(r->type_name) == 0) {
            report.error(member_path(path, "TypeName"), "unresolved-reference",
                         "type \"" + r->type_name + "\" is not declared in this model");
        }
    }
}

void check_error_ref(const FunctionModel& m, const std::string& name, const std::string& path,
                     ValidationReport& report, const char* what) {
    if (m.find_error(name) == nullptr) {
        report.error(path, "unresolved-reference", std::string(what) + " \"" + name + "\" is not a declared error");
    }
}

void validate_watchdog(const FunctionModel& m, const WatchdogSpec& w, const std::string& path, ValidationReport& report) {
    if (w.supervision_type.alive != w.alive_limits.has_value()) {
        report.error(member_path(path, "AliveLimits"), "watchdog", "AliveLimits present iff Alive supervision");
    }
    if (w.supervision_type.deadline != w.deadline_limits.has_value()) {
        report.error(member_path(path, "DeadlineLimits"), "watchdog",
                     "DeadlineLimits present iff Deadline supervision");
    }
    if (w.supervision_type.logical != w.logical_check.has_value()) {
        report.error(member_path(path, "LogicalCheck"), "watchdog", "LogicalCheck present iff Logical supervision");
    }
    if (w.alive_limits) {
        const auto p = member_path(path, "AliveLimits");
        if (w.alive_limits->min_indications > w.alive_limits->max_indications) {
            report.error(p, "range", "MinIndications > MaxIndications");
        }
        if (w.alive_limits->reference_window <= 0.0) {
            report.error(member_path(p, "ReferenceWindow"), "range", "ReferenceWindow must be > 0");
        }
        check_error_ref(m, w.alive_limits->error_name, member_path(p, "ErrorName"), report, "alive error");
    }
    if (w.deadline_limits) {
        const auto p = member_path(path, "DeadlineLimits");
        if (w.deadline_limits->min_duration > w.deadline_limits->max_duration) {
            report.error(p, "range", "MinDuration > MaxDuration");
        }
        check_error_ref(m, w.deadline_limits->error_name, member_path(p, "ErrorName"), report, "deadline error");
    }
    if (w.logical_check) {
        const auto p = member_path(path, "LogicalCheck");
        if (w.logical_check->expected_order.empty()) {
            report.error(member_path(p, "ExpectedOrder"), "range", "ExpectedOrder must not be empty");
        }
        check_error_ref(m, w.logical_check->error_name, member_path(p, "ErrorName"), report, "logical error");
    }
}

// Reports dependency cycles among the model's own errors.
void check_dependency_cycles(const FunctionModel& m, ValidationReport& report) {
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& e : m.errors) {
        for (const auto& d : e.dependencies) {
            if (m.find_error(d) != nullptr) {
                edges[e.name].push_back(d);
            }
        }
    }
    enum class Mark { kNone, kActive, kDone };
    std::map<std::string, Mark> marks;
    std::set<std::string> reported;
    std::function<bool(const std::string&)> visit = [&](const std::string& n) {
        auto& mark = marks[n];
        if (mark == Mark::kActive) return true;
        if (mark == Mark::kDone) return false;
        mark = Mark::kActive;
        bool cyclic = false;
        for (const auto& next : edges[n]) {
            cyclic = visit(next) || cyclic;
        }
        marks[n] = Mark::kDone;
        return cyclic;
    };
    for (std::size_t i = 0; i < m.errors.size(); ++i) {
        marks.clear();
        if (visit(m.errors[i].name) && reported.insert(m.errors[i].name).second) {
            report.error(member_path(index_path("ErrorList", i), "Dependencies"), "dependency-cycle",
                         "error \"" + m.errors[i].name + "\" is part of a dependency cycle");
        }
    }
}

}  // namespace

// --- enumerations ---------------------------------------------------------------

std::string_view to_string(AsilLevel level) {
    switch (level) {
        case AsilLevel::kQM: return "QM";
        case AsilLevel::kA: return "A";
        case AsilLevel::kB: return "B";
        case AsilLevel::kC: return "C";
        case AsilLevel::kD: return "D";
    }
    return "QM";
}

std::optional<AsilLevel> parse_asil(std::string_view text) {
    if (text == "QM") return AsilLevel::kQM;
    if (text == "A") return AsilLevel::kA;
    if (text == "B") return AsilLevel::kB;
    if (text == "C") return AsilLevel::kC;
    if (text == "D") return AsilLevel::kD;
    return std::nullopt;
}

namespace {
constexpr std::pair<NumericBase, std::string_view> kBaseNames[] = {
    {NumericBase::kUint8, "uint8"},   {NumericBase::kUint16, "uint16"},   {NumericBase::kUint32, "uint32"},
    {NumericBase::kUint64, "uint64"}, {NumericBase::kInt8, "int8"},       {NumericBase::kInt16, "int16"},
    {NumericBase::kInt32, "int32"},   {NumericBase::kInt64, "int64"},     {NumericBase::kFloat32, "float32"},
    {NumericBase::kFloat64, "float64"},
};
}  // namespace

std::string_view to_string(NumericBase base) {
    for (const auto& [b, name] : kBaseNames) {
        if (b == base) return name;
    }
    return "float64";
}

std::optional<NumericBase> parse_numeric_base(std::string_view text) {
    for (const auto& [b, name] : kBaseNames) {
        if (name == text) return b;
    }
    return std::nullopt;
}

bool is_integral(NumericBase base) { return base != NumericBase::kFloat32 && base != NumericBase::kFloat64; }

double base_lowest(NumericBase base) {
    switch (base) {
        case NumericBase::kUint8:
        case NumericBase::kUint16:
        case NumericBase::kUint32:
        case NumericBase::kUint64: return 0.0;
        case NumericBase::kInt8: return std::numeric_limits<std::int8_t>::lowest();
        case NumericBase::kInt16: return std::numeric_limits<std::int16_t>::lowest();
        case NumericBase::kInt32: return std::numeric_limits<std::int32_t>::lowest();
        case NumericBase::kInt64: return static_cast<double>(std::numeric_limits<std::int64_t>::lowest());
        case NumericBase::kFloat32: return std::numeric_limits<float>::lowest();
        case NumericBase::kFloat64: return std::numeric_limits<double>::lowest();
    }
    return 0.0;
}

double base_highest(NumericBase base) {
    switch (base) {
        case NumericBase::kUint8: return std::numeric_limits<std::uint8_t>::max();
        case NumericBase::kUint16: return std::numeric_limits<std::uint16_t>::max();
        case NumericBase::kUint32: return std::numeric_limits<std::uint32_t>::max();
        // Runtime integers are int64; larger uint64 values are not carried.
        case NumericBase::kUint64: return static_cast<double>(std::numeric_limits<std::int64_t>::max());
        case NumericBase::kInt8: return std::numeric_limits<std::int8_t>::max();
        case NumericBase::kInt16: return std::numeric_limits<std::int16_t>::max();
        case NumericBase::kInt32: return std::numeric_limits<std::int32_t>::max();
        case NumericBase::kInt64: return static_cast<double>(std::numeric_limits<std::int64_t>::max());
        case NumericBase::kFloat32: return std::numeric_limits<float>::max();
        case NumericBase::kFloat64: return std::numeric_limits<double>::max();
    }
    return 0.0;
}

std::string_view to_string(InterfaceRole role) { return role == InterfaceRole::kConsumer ? "Consumer" : "Provider"; }

std::string_view to_string(RangeErrorAction action) { return action == RangeErrorAction::kDefault ? "Default" : "Init"; }

std::string_view to_string(ParameterAttribute attribute) {
    switch (attribute) {
        case ParameterAttribute::kNA: return "NA";
        case ParameterAttribute::kNormal: return "Normal";
        case ParameterAttribute::kLearningParameter: return "LearningParameter";
    }
    return "NA";
}

std::string SupervisionType::to_string() const {
    if (none()) {
        return "None";
    }
    std::string out;
    const auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += "+";
        out += name;
    };
    add(alive, "Alive");
    add(deadline, "Deadline");
    add(logical, "Logical");
    return out;
}

const std::vector<std::string>& SupervisionType::literals() {
    static const std::vector<std::string> all = [] {
        std::vector<std::string> out;
        for (int bits = 0; bits < 8; ++bits) {
            out.push_back(SupervisionType{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0}.to_string());
        }
        return out;
    }();
    return all;
}

std::optional<SupervisionType> SupervisionType::parse(std::string_view text) {
    for (int bits = 0; bits < 8; ++bits) {
        SupervisionType t{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
        if (t.to_string() == text) {
            return t;
        }
    }
    return std::nullopt;
}

// --- Datatype -------------------------------------------------------------------

std::optional<std::string> Datatype::declared_name() const {
    if (const auto* s = get_if<StructDatatype>()) return s->type_name;
    if (const auto* a = get_if<ArrayDatatype>()) return a->type_name;
    if (const auto* e = get_if<EnumerationDatatype>()) return e->type_name;
    return std::nullopt;
}

std::string_view Datatype::category() const {
    static constexpr std::string_view kNames[] = {"Numerical", "String",      "Boolean",      "Struct",
                                                  "Array",     "Enumeration", "TypeReference"};
    return kNames[v.index()];
}

Datatype datatype_from_json(const json& j, const std::string& path, ValidationReport& report) {
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return {};
    }
    const auto category = r.opt_string("Category", true);
    if (!category) {
        r.finish();
        return {};
    }
    Datatype out;
    if (*category == "Numerical") {
        NumericalDatatype n;
        n.base = r.enumeration<NumericBase>("BaseType", parse_numeric_base, kBaseAllowed, NumericBase::kFloat64);
        n.min = r.number("Min");
        n.max = r.number("Max");
        n.unit = r.string("Unit");
        n.default_value = r.number("Default");
        out = n;
    } else if (*category == "String") {
        TextDatatype t;
        t.max_length = r.count("MaxLength");
        t.default_value = r.string("Default");
        out = t;
    } else if (*category == "Boolean") {
        out = BooleanDatatype{r.boolean("Default")};
    } else if (*category == "Struct") {
        StructDatatype s;
        s.type_name = opt_type_name(r);
        s.fields = r.list<StructField>(
            "Fields", true,
            [&](const json& e, const std::string& p) {
                StructField f;
                ObjectReader fr(e, p, report);
                if (fr.valid()) {
                    f.name = required_type_name(fr, "Name");
                    if (const auto* d = fr.member("Datatype", true)) {
                        f.datatype = datatype_from_json(*d, fr.at("Datatype"), report);
                    }
                    fr.finish();
                }
                return f;
            },
            1);
        out = std::move(s);
    } else if (*category == "Array") {
        ArrayDatatype a;
        a.type_name = opt_type_name(r);
        if (const auto* e = r.member("Element", true)) {
            a.element = datatype_from_json(*e, r.at("Element"), report);
        }
        a.length = r.count("Length", 1);
        out = std::move(a);
    } else if (*category == "Enumeration") {
        EnumerationDatatype e;
        e.type_name = opt_type_name(r);
        e.literals = r.list<EnumerationLiteral>(
            "Literals", true,
            [&](const json& item, const std::string& p) {
                EnumerationLiteral lit;
                ObjectReader lr(item, p, report);
                if (lr.valid()) {
                    lit.name = required_type_name(lr, "Name");
                    lit.value = lr.integer("Value");
                    lr.finish();
                }
                return lit;
            },
            1);
        out = std::move(e);
    } else if (*category == "TypeReference") {
        out = TypeReference{required_type_name(r, "TypeName")};
    } else {
        report.error(r.at("Category"), "schema",
                     "value \"" + *category +
                         "\" is not one of {Numerical, String, Boolean, Struct, Array, Enumeration, TypeReference}");
    }
    r.finish();
    return out;
}

json to_json(const Datatype& datatype) {
    json j;
    j["Category"] = datatype.category();
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, NumericalDatatype>) {
                j["BaseType"] = to_string(d.base);
                j["Min"] = d.min;
                j["Max"] = d.max;
                j["Unit"] = d.unit;
                j["Default"] = d.default_value;
            } else if constexpr (std::is_same_v<T, TextDatatype>) {
                j["MaxLength"] = d.max_length;
                j["Default"] = d.default_value;
            } else if constexpr (std::is_same_v<T, BooleanDatatype>) {
                j["Default"] = d.default_value;
            } else if constexpr (std::is_same_v<T, StructDatatype>) {
                if (d.type_name) j["TypeName"] = *d.type_name;
                json fields = json::array();
                for (const auto& f : d.fields) {
                    fields.push_back({{"Name", f.name}, {"Datatype", to_json(*f.datatype)}});
                }
                j["Fields"] = std::move(fields);
            } else if constexpr (std::is_same_v<T, ArrayDatatype>) {
                if (d.type_name) j["TypeName"] = *d.type_name;
                j["Element"] = to_json(*d.element);
                j["Length"] = d.length;
            } else if constexpr (std::is_same_v<T, EnumerationDatatype>) {
                if (d.type_name) j["TypeName"] = *d.type_name;
                json literals = json::array();
                for (const auto& l : d.literals) {
                    literals.push_back({{"Name", l.name}, {"Value", l.value}});
                }
                j["Literals"] = std::move(literals);
            } else {
                j["TypeName"] = d.type_name;
            }
        },
        datatype.v);
    return j;
}

Parameter parameter_from_json(const json& j, const std::string& path, ValidationReport& report) {
    Parameter p;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return p;
    }
    p.name = r.nonempty_string("Name");
    p.description = r.string("Description");
    p.asil = r.enumeration<AsilLevel>("AsilInfo", parse_asil, kAsilAllowed, AsilLevel::kQM);
    if (const auto* d = r.member("Datatype", true)) {
        p.datatype = datatype_from_json(*d, r.at("Datatype"), report);
    }
    p.range_error_action =
        r.opt_enumeration<RangeErrorAction>("RangeErrorAction", false, parse_range_action, kRangeActionAllowed);
    p.attribute = r.enumeration<ParameterAttribute>("Attribute", parse_attribute, kAttributeAllowed,
                                                    ParameterAttribute::kNA);
    r.finish();
    return p;
}

json to_json(const Parameter& p) {
    json j{{"Name", p.name},
           {"Description", p.description},
           {"AsilInfo", to_string(p.asil)},
           {"Datatype", to_json(p.datatype)},
           {"Attribute", to_string(p.attribute)}};
    if (p.range_error_action) j["RangeErrorAction"] = to_string(*p.range_error_action);
    return j;
}

// --- FunctionModel ----------------------------------------------------------------

const ErrorSpec* FunctionModel::find_error(std::string_view n) const {
    auto it = std::find_if(errors.begin(), errors.end(), [&](const ErrorSpec& e) { return e.name == n; });
    return it == errors.end() ? nullptr : &*it;
}

const InterfaceDatatype* FunctionModel::find_interface(std::string_view n) const {
    auto it = std::find_if(interface_data.begin(), interface_data.end(),
                           [&](const InterfaceDatatype& i) { return i.name == n; });
    return it == interface_data.end() ? nullptr : &*it;
}

WatchdogSpec FunctionModel::effective_watchdog() const {
    if (!scheduling.supervision.supervision_type.none() || !watchdog) {
        return scheduling.supervision;
    }
    return *watchdog;
}

std::vector<Datatype> FunctionModel::declared_datatypes() const {
    std::vector<Datatype> out;
    std::set<std::string> seen;
    NamedTypes named = named_types(*this);
    for (const auto& [name, d] : named) {
        if (seen.insert(name).second) {
            out.push_back(*d);
        }
    }
    return out;
}

FunctionModel function_model_from_json_fragment(const json& j, const std::string& path, ValidationReport& report) {
    FunctionModel m;
    ObjectReader r(j, path, report);
    if (!r.valid()) {
        return m;
    }
    m.name = r.string("Name");
    if (r.has("Name") && j.at("Name").is_string() && !is_identifier(m.name)) {
        report.error(r.at("Name"), "schema", "\"" + m.name + "\" does not match " + kFunctionNamePattern);
    }
    m.description = r.string("Description");
    m.interface_data = r.list<InterfaceDatatype>("InterfaceData", true, [&](const json& e, const std::string& p) {
        return interface_from_json(e, p, report);
    });
    if (const auto* s = r.member("SchedulingInfo", true)) {
        m.scheduling = scheduling_from_json(*s, r.at("SchedulingInfo"), report);
    }
    const auto named = [&](const json& e, const std::string& p) { return named_record_from_json(e, p, report); };
    m.messages = r.list<NamedRecord>("MessageList", false, named);
    m.methods = r.list<NamedRecord>("MethodList", false, named);
    m.parameters = r.list<Parameter>("ParameterList", false, [&](const json& e, const std::string& p) {
        return parameter_from_json(e, p, report);
    });
    m.errors = r.list<ErrorSpec>("ErrorList", false, [&](const json& e, const std::string& p) {
        return error_from_json(e, p, report);
    });
    m.safety_reactions = r.list<SafetyReaction>("SafetyReactionList", false, [&](const json& e, const std::string& p) {
        return safety_from_json(e, p, report);
    });
    if (const auto* w = r.member("Watchdog", false)) {
        m.watchdog = watchdog_from_json(*w, r.at("Watchdog"), report);
    }
    if (const auto* a = r.member("AllocationInfo", false)) {
        ObjectReader ar(*a, r.at("AllocationInfo"), report);
        if (ar.valid()) {
            m.allocation = AllocationInfo{ar.count("RequiredMemory")};
            ar.finish();
        }
    }
    r.finish();
    return m;
}

FunctionModel decode_function_model(const json& document) {
    ValidationReport report;
    FunctionModel m = function_model_from_json_fragment(document, "", report);
    if (!report.findings.empty()) {
        throw Error(ErrorKind::kSchema, "function model violates the schema", report.findings);
    }
    return m;
}

json to_json(const FunctionModel& m) {
    json j{{"Name", m.name},
           {"Description", m.description},
           {"InterfaceData", list_to_json(m.interface_data)},
           {"SchedulingInfo", to_json(m.scheduling)}};
    if (!m.messages.empty()) j["MessageList"] = list_to_json(m.messages);
    if (!m.methods.empty()) j["MethodList"] = list_to_json(m.methods);
    if (!m.parameters.empty()) j["ParameterList"] = list_to_json(m.parameters);
    if (!m.errors.empty()) j["ErrorList"] = list_to_json(m.errors);
    if (!m.safety_reactions.empty()) j["SafetyReactionList"] = list_to_json(m.safety_reactions);
    if (m.watchdog) j["Watchdog"] = to_json(*m.watchdog);
    if (m.allocation) j["AllocationInfo"] = {{"RequiredMemory", m.allocation->required_memory}};
    return j;
}

FunctionModel parse_function_model(std::string_view json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::kJsonSyntax, std::string("JSON syntax error: ") + e.what());
    }
    FunctionModel model = decode_function_model(document);
    ValidationReport report = validate_function_model(model);
    if (!report.valid()) {
        const bool dangling = std::any_of(report.findings.begin(), report.findings.end(), [](const Finding& f) {
            return f.severity == Severity::kError && f.code == "unresolved-reference";
        });
        throw Error(dangling ? ErrorKind::kUnresolvedReference : ErrorKind::kValidation,
                    "function model \"" + model.name + "\" is invalid", report.findings);
    }
    return model;
}

ValidationReport validate_function_model(const FunctionModel& m) {
    ValidationReport report;
    const NamedTypes named = named_types(m);

    if (!is_identifier(m.name)) {
        report.error("Name", "name", "function name \"" + m.name + "\" must match " + kFunctionNamePattern);
    }

    std::set<std::string> interface_names;
    for (std::size_t i = 0; i < m.interface_data.size(); ++i) {
        const auto& itf = m.interface_data[i];
        const auto path = index_path("InterfaceData", i);
        if (!interface_names.insert(itf.name).second) {
            report.error(path, "duplicate", "duplicate interface name \"" + itf.name + "\"");
        }
        if (!SignalPath::try_parse(itf.name)) {
            report.error(member_path(path, "Name"), "name", "\"" + itf.name + "\" is not a valid signal path");
        }
        if (itf.kind.empty()) {
            report.error(member_path(path, "Type"), "schema", "Type must not be empty");
        }
        validate_datatype(itf.datatype, member_path(path, "Datatype"), named, report);
        if (itf.timeout_value.has_value() != itf.timeout_error.has_value()) {
            report.error(path, "timeout", "TimeoutValue and TimeoutError must be given together");
        }
        if (itf.timeout_value && *itf.timeout_value <= 0.0) {
            report.error(member_path(path, "TimeoutValue"), "range", "TimeoutValue must be > 0");
        }
        if (itf.timeout_error) {
            check_error_ref(m, *itf.timeout_error, member_path(path, "TimeoutError"), report, "timeout error");
        }
        if (itf.range_error_action && !itf.datatype.is<NumericalDatatype>()) {
            report.warning(member_path(path, "RangeErrorAction"), "range-action",
                           "RangeErrorAction only applies to numerical datatypes");
        }
    }

    std::set<std::string> parameter_names;
    for (std::size_t i = 0; i < m.parameters.size(); ++i) {
        const auto path = index_path("ParameterList", i);
        if (!parameter_names.insert(m.parameters[i].name).second) {
            report.error(path, "duplicate", "duplicate parameter name \"" + m.parameters[i].name + "\"");
        }
        validate_datatype(m.parameters[i].datatype, member_path(path, "Datatype"), named, report);
    }

    std::set<std::string> error_names;
    for (std::size_t i = 0; i < m.errors.size(); ++i) {
        const auto& e = m.errors[i];
        const auto path = index_path("ErrorList", i);
        if (!error_names.insert(e.name).second) {
            report.error(path, "duplicate", "duplicate error name \"" + e.name + "\"");
        }
        if (e.maturation_time < 0.0) {
            report.error(member_path(path, "MaturationTime"), "range", "MaturationTime must be >= 0");
        }
        if (e.reset_time < 0.0) {
            report.error(member_path(path, "ResetTime"), "range", "ResetTime must be >= 0");
        }
        validate_datatype(e.datatype, member_path(path, "Datatype"), named, report);
        for (std::size_t d = 0; d < e.dependencies.size(); ++d) {
            if (e.dependencies[d] == e.name) {
                report.error(index_path(member_path(path, "Dependencies"), d), "dependency-cycle",
                             "error depends on itself");
            } else if (m.find_error(e.dependencies[d]) == nullptr) {
                report.warning(index_path(member_path(path, "Dependencies"), d), "external-dependency",
                               "dependency \"" + e.dependencies[d] + "\" is external to this model");
            }
        }
    }
    check_dependency_cycles(m, report);

    std::set<std::string> reaction_names;
    for (std::size_t i = 0; i < m.safety_reactions.size(); ++i) {
        const auto& s = m.safety_reactions[i];
        const auto path = index_path("SafetyReactionList", i);
        if (!reaction_names.insert(s.name).second) {
            report.error(path, "duplicate", "duplicate safety reaction name \"" + s.name + "\"");
        }
        if (s.error_list.empty()) {
            report.error(member_path(path, "ErrorList"), "range", "ErrorList must not be empty");
        }
        for (std::size_t k = 0; k < s.error_list.size(); ++k) {
            check_error_ref(m, s.error_list[k], index_path(member_path(path, "ErrorList"), k), report,
                            "safety reaction error");
        }
        validate_datatype(s.datatype, member_path(path, "Datatype"), named, report);
    }

    const auto& sched = m.scheduling;
    if (sched.run_type.empty()) {
        report.error("SchedulingInfo.RunType", "schema", "RunType must not be empty");
    }
    if (sched.is_cyclic() && sched.cycle_time <= 0.0) {
        report.error("SchedulingInfo.CycleTime", "scheduling", "cyclic functions need CycleTime > 0");
    }
    if (sched.cycle_time < 0.0) {
        report.error("SchedulingInfo.CycleTime", "range", "CycleTime must be >= 0");
    }
    if (sched.initial_offset) {
        if (*sched.initial_offset < 0.0) {
            report.error("SchedulingInfo.InitialOffset", "range", "InitialOffset must be >= 0");
        } else if (sched.cycle_time > 0.0 && *sched.initial_offset >= sched.cycle_time) {
            report.error("SchedulingInfo.InitialOffset", "scheduling",
                         "InitialOffset " + fmt(*sched.initial_offset) + " must be < CycleTime " +
                             fmt(sched.cycle_time));
        }
    }
    if (sched.debounce_time) {
        if (*sched.debounce_time < 0.0) {
            report.error("SchedulingInfo.DebounceTime", "range", "DebounceTime must be >= 0");
        } else if (*sched.debounce_time > sched.cycle_time) {
            report.error("SchedulingInfo.DebounceTime", "scheduling",
                         "DebounceTime " + fmt(*sched.debounce_time) + " must be <= CycleTime " +
                             fmt(sched.cycle_time));
        }
    }
    validate_watchdog(m, sched.supervision, "SchedulingInfo.Supervision", report);
    if (m.watchdog) {
        validate_watchdog(m, *m.watchdog, "Watchdog", report);
        if (!sched.supervision.supervision_type.none() && !(*m.watchdog == sched.supervision)) {
            report.warning("Watchdog", "watchdog", "Watchdog differs from SchedulingInfo.Supervision; the latter is used");
        }
    }
    return report;
}

std::string serialize_function_model(const FunctionModel& model) { return to_json(model).dump(); }

// --- schema -------------------------------------------------------------------------

namespace {

json str() { return {{"type", "string"}}; }
json nonempty_str() { return {{"type", "string"}, {"minLength", 1}}; }
json count_min(int minimum) { return {{"type", "integer"}, {"minimum", minimum}}; }
json ref(const char* def) { return {{"$ref", std::string("#/$defs/") + def}}; }
json enum_of(std::initializer_list<const char*> values) {
    json e = json::array();
    for (const auto* v : values) e.push_back(v);
    return {{"type", "string"}, {"enum", e}};
}

json object_schema(json properties, std::vector<std::string> required, std::string description = {}) {
    json s{{"type", "object"}, {"properties", std::move(properties)}, {"required", required},
           {"additionalProperties", false}};
    if (!description.empty()) s["description"] = description;
    return s;
}

json string_array(int min_items = 0) {
    json s{{"type", "array"}, {"items", str()}};
    if (min_items > 0) s["minItems"] = min_items;
    return s;
}

}  // namespace

json function_schema_defs() {
    json defs;
    defs["AsilLevel"] = enum_of({"QM", "A", "B", "C", "D"});
    defs["TypeName"] = {{"type", "string"}, {"pattern", kTypeNamePattern}};
    defs["SignalPath"] = {{"type", "string"}, {"pattern", signal_path_pattern()}};
    defs["DurationMs"] = {{"type", "number"}, {"minimum", 0}, {"description", "duration in milliseconds"}};

    defs["NumericalDatatype"] = object_schema(
        {{"Category", {{"const", "Numerical"}}},
         {"BaseType", enum_of({"uint8", "uint16", "uint32", "uint64", "int8", "int16", "int32", "int64", "float32",
                               "float64"})},
         {"Min", {{"type", "number"}}},
         {"Max", {{"type", "number"}}},
         {"Unit", str()},
         {"Default", {{"type", "number"}}}},
        {"Category", "BaseType", "Min", "Max", "Unit", "Default"}, "engineering-unit limits and default");
    defs["StringDatatype"] = object_schema(
        {{"Category", {{"const", "String"}}}, {"MaxLength", count_min(0)}, {"Default", str()}},
        {"Category", "MaxLength", "Default"});
    defs["BooleanDatatype"] =
        object_schema({{"Category", {{"const", "Boolean"}}}, {"Default", {{"type", "boolean"}}}}, {"Category", "Default"});
    defs["StructField"] = object_schema({{"Name", ref("TypeName")}, {"Datatype", ref("Datatype")}}, {"Name", "Datatype"});
    defs["StructDatatype"] = object_schema({{"Category", {{"const", "Struct"}}},
                                            {"TypeName", ref("TypeName")},
                                            {"Fields", {{"type", "array"}, {"items", ref("StructField")}, {"minItems", 1}}}},
                                           {"Category", "Fields"});
    defs["ArrayDatatype"] = object_schema({{"Category", {{"const", "Array"}}},
                                           {"TypeName", ref("TypeName")},
                                           {"Element", ref("Datatype")},
                                           {"Length", count_min(1)}},
                                          {"Category", "Element", "Length"});
    defs["EnumerationLiteral"] =
        object_schema({{"Name", ref("TypeName")}, {"Value", {{"type", "integer"}}}}, {"Name", "Value"});
    defs["EnumerationDatatype"] =
        object_schema({{"Category", {{"const", "Enumeration"}}},
                       {"TypeName", ref("TypeName")},
                       {"Literals", {{"type", "array"}, {"items", ref("EnumerationLiteral")}, {"minItems", 1}}}},
                      {"Category", "Literals"});
    defs["TypeReference"] =
        object_schema({{"Category", {{"const", "TypeReference"}}}, {"TypeName", ref("TypeName")}}, {"Category", "TypeName"});
    defs["Datatype"] = {{"oneOf",
                         {ref("NumericalDatatype"), ref("StringDatatype"), ref("BooleanDatatype"), ref("StructDatatype"),
                          ref("ArrayDatatype"), ref("EnumerationDatatype"), ref("TypeReference")}}};

    json interface = object_schema({{"Name", ref("SignalPath")},
                                    {"Description", str()},
                                    {"Role", {{"type", "string"}, {"pattern", "^(Consumer|Provider)$"}}},
                                    {"Type", nonempty_str()},
                                    {"Datatype", ref("Datatype")},
                                    {"RangeErrorAction", {{"type", "string"}, {"pattern", "^(Default|Init)$"}}},
                                    {"TimeoutValue", {{"type", "number"}, {"exclusiveMinimum", 0},
                                                      {"description", "timeout in milliseconds"}}},
                                    {"TimeoutError", str()},
                                    {"AsilInfo", ref("AsilLevel")}},
                                   {"Name", "Description", "Role", "Type", "Datatype", "AsilInfo"});
    interface["dependentRequired"] = {{"TimeoutValue", {"TimeoutError"}}, {"TimeoutError", {"TimeoutValue"}}};
    defs["InterfaceDatatype"] = interface;

    defs["Parameter"] = object_schema(
        {{"Name", nonempty_str()},
         {"Description", str()},
         {"AsilInfo", ref("AsilLevel")},
         {"Datatype", ref("Datatype")},
         {"RangeErrorAction", {{"type", "string"}, {"pattern", "^(Default|Init)$"}}},
         {"Attribute", {{"type", "string"}, {"pattern", "^(NA|Normal|LearningParameter)$"}}}},
        {"Name", "Description", "AsilInfo", "Datatype", "Attribute"});

    defs["Error"] = object_schema({{"Name", nonempty_str()},
                                   {"Datatype", ref("Datatype")},
                                   {"MaturationTime", ref("DurationMs")},
                                   {"Severity", str()},
                                   {"ResetTime", ref("DurationMs")},
                                   {"ResetCondition", str()},
                                   {"Description", str()},
                                   {"Dependencies", string_array()}},
                                  {"Name", "Datatype", "MaturationTime", "Severity", "ResetTime", "ResetCondition",
                                   "Description"});
    defs["SafetyReaction"] = object_schema(
        {{"Name", nonempty_str()}, {"Datatype", ref("Datatype")}, {"ErrorList", string_array(1)}, {"Description", str()}},
        {"Name", "Datatype", "ErrorList", "Description"});

    json supervision_literals = json::array();
    for (const auto& l : SupervisionType::literals()) supervision_literals.push_back(l);
    json watchdog = object_schema(
        {{"SupervisionType", {{"type", "string"}, {"enum", supervision_literals}}},
         {"AliveLimits", object_schema({{"MinIndications", count_min(0)},
                                        {"MaxIndications", count_min(0)},
                                        {"ReferenceWindow", {{"type", "number"}, {"exclusiveMinimum", 0}}},
                                        {"ErrorName", nonempty_str()}},
                                       {"MinIndications", "MaxIndications", "ReferenceWindow", "ErrorName"})},
         {"DeadlineLimits", object_schema({{"MinDuration", ref("DurationMs")},
                                           {"MaxDuration", ref("DurationMs")},
                                           {"ErrorName", nonempty_str()}},
                                          {"MinDuration", "MaxDuration", "ErrorName"})},
         {"LogicalCheck", object_schema({{"ExpectedOrder", string_array(1)}, {"ErrorName", nonempty_str()}},
                                        {"ExpectedOrder", "ErrorName"})}},
        {"SupervisionType"});
    // Limits are present exactly when the matching supervision is selected.
    json conditions = json::array();
    for (const auto& [word, key] : {std::pair{"Alive", "AliveLimits"},
                                    std::pair{"Deadline", "DeadlineLimits"},
                                    std::pair{"Logical", "LogicalCheck"}}) {
        json if_clause = {{"properties", {{"SupervisionType", {{"pattern", word}}}}}};
        conditions.push_back({{"if", if_clause},
                              {"then", {{"required", {key}}}},
                              {"else", {{"not", {{"required", {key}}}}}}});
    }
    watchdog["allOf"] = conditions;
    defs["Watchdog"] = watchdog;

    defs["SchedulingInfo"] = object_schema({{"RunType", nonempty_str()},
                                            {"CycleTime", ref("DurationMs")},
                                            {"Description", str()},
                                            {"InitialOffset", ref("DurationMs")},
                                            {"Priority", {{"type", "integer"}}},
                                            {"FunctionScheduling", str()},
                                            {"DebounceTime", ref("DurationMs")},
                                            {"ImplementedAsil", ref("AsilLevel")},
                                            {"PreviousRunnable", str()},
                                            {"Supervision", ref("Watchdog")},
                                            {"StackSize", count_min(0)}},
                                           {"RunType", "CycleTime", "Description", "ImplementedAsil", "Supervision"});
    defs["NamedRecord"] = object_schema({{"Name", nonempty_str()}, {"Description", str()}}, {"Name", "Description"});
    defs["AllocationInfo"] = object_schema({{"RequiredMemory", count_min(0)}}, {"RequiredMemory"});

    const auto list_of = [&](const char* def) { return json{{"type", "array"}, {"items", ref(def)}}; };
    defs["Function"] = object_schema({{"Name", {{"type", "string"}, {"pattern", kFunctionNamePattern}}},
                                      {"Description", str()},
                                      {"InterfaceData", list_of("InterfaceDatatype")},
                                      {"SchedulingInfo", ref("SchedulingInfo")},
                                      {"MessageList", list_of("NamedRecord")},
                                      {"MethodList", list_of("NamedRecord")},
                                      {"ParameterList", list_of("Parameter")},
                                      {"ErrorList", list_of("Error")},
                                      {"SafetyReactionList", list_of("SafetyReaction")},
                                      {"Watchdog", ref("Watchdog")},
                                      {"AllocationInfo", ref("AllocationInfo")}},
                                     {"Name", "Description", "InterfaceData", "SchedulingInfo"},
                                     "platform-agnostic function model; durations in milliseconds");
    return defs;
}

std::string emit_function_schema() {
    json schema{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"$id", "urn:fnkit:function-model"},
                {"title", "Function model"},
                {"$ref", "#/$defs/Function"},
                {"$defs", function_schema_defs()}};
    return schema.dump(2) + "\n";
}

}  // namespace fnkit
