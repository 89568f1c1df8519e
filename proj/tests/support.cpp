// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/demo.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fnkit::test {

std::filesystem::path source_dir() { return FNKIT_SOURCE_DIR; }

std::string read_text(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string& demo_text(const std::string& name) { return demo_fixtures().at(name); }

FunctionModel demo_function(const std::string& file) { return parse_function_model(demo_text(file)); }

IntegrationModel demo_integration() {
    TransformOptions options;
    options.created_at = "2026-01-01T00:00:00Z";
    return transform({demo_function("core_acc.json"), demo_function("eco_mpc.json")},
                     parse_platform(demo_text("platform.json")), parse_topology(demo_text("topology.json")), options);
}

std::vector<AdapterManifest> demo_manifests() {
    const IntegrationModel model = demo_integration();
    std::vector<AdapterManifest> out;
    for (const auto& c : model.components) out.push_back(build_manifest(model, c.name));
    return out;
}

SignalTree demo_catalog() { return load_catalog(demo_text("catalog.json")); }

nlohmann::json minimal_function_json(const std::string& name) {
    using nlohmann::json;
    auto numerical = [](const char* base, double lo, double hi, const char* unit) {
        return json{{"Category", "Numerical"}, {"BaseType", base}, {"Min", lo}, {"Max", hi}, {"Unit", unit},
                    {"Default", 0}};
    };
    return json{
        {"Name", name},
        {"Description", "minimal function"},
        {"InterfaceData",
         json::array({json{{"Name", "Vehicle.Speed"},
                           {"Description", "speed"},
                           {"Role", "Consumer"},
                           {"Type", "Signal"},
                           {"Datatype", numerical("float32", -250, 250, "km/h")},
                           {"AsilInfo", "QM"}},
                      json{{"Name", "Vehicle.ADAS.Probe.Output"},
                           {"Description", "output"},
                           {"Role", "Provider"},
                           {"Type", "Signal"},
                           {"Datatype", numerical("uint8", 0, 10, "")},
                           {"AsilInfo", "QM"}}})},
        {"SchedulingInfo",
         {{"RunType", "cyclic"},
          {"CycleTime", 100},
          {"Description", "periodic"},
          {"ImplementedAsil", "QM"},
          {"Supervision", {{"SupervisionType", "None"}}}}}};
}

AdapterManifest simple_manifest(const std::string& component, double cycle_ms, std::int64_t priority,
                                const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    AdapterManifest m;
    m.component_name = component;
    m.executable_name = component + "_exe";
    m.function_name = component + "Fn";
    m.cycle_time = cycle_ms;
    m.priority = priority;
    const Datatype value = NumericalDatatype{NumericBase::kFloat64, -1000.0, 1000.0, "", 0.0};
    for (const auto& path : inputs) {
        ManifestSubscription s;
        s.service = "Svc";
        s.event = path;
        s.source_path = path;
        s.buffer_name = buffer_name_for(path);
        s.datatype = value;
        m.subscriptions.push_back(s);
    }
    for (const auto& path : outputs) {
        ManifestPublication p;
        p.service = "Svc";
        p.event = path;
        p.source_path = path;
        p.buffer_name = buffer_name_for(path);
        p.datatype = value;
        m.publications.push_back(p);
    }
    return m;
}

}  // namespace fnkit::test
