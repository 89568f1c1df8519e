// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/pipeline.hpp"

#include "fnkit/demo.hpp"
#include "fnkit/runtime/bus.hpp"
#include "fnkit/runtime/lifecycle_node.hpp"
#include "fnkit/signal_catalog.hpp"

namespace fnkit {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::kFunction ? "function" : "integration"; }

ModelKind detect_model_kind(const nlohmann::json& document) {
    return document.is_object() && document.contains("MetaInformation") ? ModelKind::kIntegration
                                                                       : ModelKind::kFunction;
}

ValidationReport check_model_text(std::string_view text, std::optional<ModelKind> kind, const SignalTree* catalog) {
    ValidationReport report;
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        report.error("", "json-syntax", e.what());
        return report;
    }
    const ModelKind k = kind.value_or(detect_model_kind(document));
    try {
        if (k == ModelKind::kFunction) {
            const FunctionModel model = decode_function_model(document);
            report.merge(validate_function_model(model));
            if (catalog != nullptr) report.merge(check_catalog_conformance(model, *catalog));
        } else {
            report.merge(validate_integration(decode_integration_model(document)));
        }
    } catch (const Error& e) {
        if (e.findings().empty()) {
            report.error("", "schema", e.what());
        } else {
            for (const auto& f : e.findings()) report.findings.push_back(f);
        }
    }
    return report;
}

std::int64_t effective_duration_us(const SignalTrace& stimuli, std::int64_t requested_us) {
    if (requested_us > 0) return requested_us;
    return stimuli.end_us() + 1;
}

namespace {

FunctionFactory factory_or_default(const RunOptions& options) {
    if (options.factory) return options.factory;
    return [](const std::string& name) { return make_demo_function(name); };
}

}  // namespace

RunOutcome run_application(const std::vector<AdapterManifest>& manifests, const SignalTrace& stimuli,
                           const RunOptions& options) {
    RunOutcome outcome;
    SimClock clock(options.clock);
    Bus bus(clock, outcome.trace);
    for (const auto& m : manifests) bus.register_types(m.datatypes);
    for (const auto& m : manifests) {
        for (const auto& s : m.subscriptions) bus.register_event(s.source_path, s.datatype);
        for (const auto& p : m.publications) bus.register_event(p.source_path, p.datatype);
    }
    const auto factory = factory_or_default(options);
    std::vector<std::unique_ptr<LifecycleNode>> nodes;
    std::vector<LifecycleNode*> raw;
    for (const auto& m : manifests) {
        nodes.push_back(create_node(m, factory(m.function_name), bus));
        raw.push_back(nodes.back().get());
        outcome.cycle_time_ms[m.component_name] = m.cycle_time;
    }
    clock.reset();
    for (auto* n : raw) n->trigger(LifecycleState::kConfiguring);
    for (auto* n : raw) {
        if (n->state() == LifecycleState::kInactive) n->trigger(LifecycleState::kActivating);
    }
    outcome.scheduler = run_scheduler(raw, bus, effective_duration_us(stimuli, options.duration_us), &stimuli);
    for (auto* n : raw) {
        if (n->state() == LifecycleState::kActive) n->trigger(LifecycleState::kDeactivating);
    }
    for (auto* n : raw) {
        if (n->state() != LifecycleState::kFinalized) n->trigger(LifecycleState::kShuttingDown);
    }
    nodes.clear();
    return outcome;
}

FunctionModel function_model_from_manifest(const AdapterManifest& m) {
    FunctionModel f;
    f.name = m.function_name;
    for (const auto& s : m.subscriptions) {
        InterfaceDatatype i;
        i.name = s.source_path;
        i.role = InterfaceRole::kConsumer;
        i.kind = "Signal";
        i.datatype = s.datatype;
        f.interface_data.push_back(std::move(i));
    }
    for (const auto& p : m.publications) {
        InterfaceDatatype i;
        i.name = p.source_path;
        i.role = InterfaceRole::kProvider;
        i.kind = "Signal";
        i.datatype = p.datatype;
        f.interface_data.push_back(std::move(i));
    }
    f.scheduling.run_type = "cyclic";
    f.scheduling.cycle_time = m.cycle_time;
    f.scheduling.initial_offset = m.initial_offset;
    f.scheduling.priority = m.priority;
    return f;
}

RunTrace run_baseline_application(const std::vector<AdapterManifest>& manifests, const SignalTrace& stimuli,
                                  const RunOptions& options) {
    const auto factory = factory_or_default(options);
    std::vector<BaselineFunction> functions;
    std::vector<Datatype> types;
    for (const auto& m : manifests) {
        functions.push_back(BaselineFunction{function_model_from_manifest(m), factory(m.function_name)});
        types.insert(types.end(), m.datatypes.begin(), m.datatypes.end());
    }
    return run_baseline(functions, stimuli, effective_duration_us(stimuli, options.duration_us), types);
}

}  // namespace fnkit
