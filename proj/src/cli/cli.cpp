// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/cli.hpp"

#include "fnkit/adapter_codegen.hpp"
#include "fnkit/demo.hpp"
#include "fnkit/function_model.hpp"
#include "fnkit/integration_model.hpp"
#include "fnkit/kpi.hpp"
#include "fnkit/pipeline.hpp"
#include "fnkit/signal_catalog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace fnkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& file, const std::string& text) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
    out << text;
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::kIo ? kExitIo : kExitFindings; }

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string located(const std::string& file, const std::string& path) {
    return path.empty() ? file : file + ":" + path;
}

json findings_json(const ValidationReport& report, const std::string& file) {
    json out = json::array();
    for (const auto& f : report.findings) {
        out.push_back({{"severity", to_string(f.severity)},
                       {"path", located(file, f.path)},
                       {"code", f.code},
                       {"message", f.message}});
    }
    return out;
}

void print_findings(std::ostream& out, const ValidationReport& report, const std::string& file) {
    for (const auto& f : report.findings) {
        out << to_string(f.severity) << ' ' << located(file, f.path) << ' ' << f.message << '\n';
    }
}

/// Reports an Error on `err` (with its findings) and returns its exit code.
int report_error(std::ostream& err, const Error& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& f : e.findings()) {
        err << to_string(f.severity) << ' ' << f.path << ' ' << f.message << '\n';
    }
    return exit_code_for(e);
}

struct Common {
    std::string format = "text";
    bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

std::optional<SignalTree> load_catalog_file(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return load_catalog(read_file(path));
}

TemplateSet resolve_templates(const std::string& option) {
    std::string dir = option;
    if (dir.empty()) {
        if (const char* env = std::getenv("FNKIT_TEMPLATES"); env != nullptr && *env != '\0') dir = env;
    }
    if (dir.empty()) return builtin_templates();
    if (!fs::is_directory(dir)) throw Error(ErrorKind::kIo, "template directory " + dir + " does not exist");
    return load_templates(dir);
}

// --- validate ---------------------------------------------------------------

struct ValidateArgs {
    std::vector<std::string> paths;
    std::string catalog;
    std::string kind = "auto";
};

int cmd_validate(const ValidateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    std::optional<SignalTree> catalog;
    try {
        catalog = load_catalog_file(a.catalog);
    } catch (const Error& e) {
        return report_error(err, e);
    }
    std::optional<ModelKind> kind;
    if (a.kind == "function") kind = ModelKind::kFunction;
    if (a.kind == "integration") kind = ModelKind::kIntegration;

    bool io_failure = false;
    bool has_errors = false;
    json files = json::array();
    for (const auto& path : a.paths) {
        std::string text;
        try {
            text = read_file(path);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            io_failure = true;
            continue;
        }
        const ValidationReport report = check_model_text(text, kind, catalog ? &*catalog : nullptr);
        has_errors = has_errors || !report.valid();
        if (c.json()) {
            files.push_back({{"file", path}, {"valid", report.valid()}, {"findings", findings_json(report, path)}});
        } else {
            print_findings(out, report, path);
        }
    }
    if (c.json()) out << json{{"files", files}}.dump(2) << '\n';
    if (io_failure) return kExitIo;
    return has_errors ? kExitFindings : kExitOk;
}

// --- schema -----------------------------------------------------------------

struct SchemaArgs {
    std::string kind = "function";
    std::string out;
};

int cmd_schema(const SchemaArgs& a, std::ostream& out, std::ostream& err) {
    const std::string text = a.kind == "function" ? emit_function_schema() : emit_integration_schema();
    if (a.out.empty()) {
        out << text;
        return kExitOk;
    }
    try {
        write_file(a.out, text);
    } catch (const Error& e) {
        return report_error(err, e);
    }
    return kExitOk;
}

// --- transform --------------------------------------------------------------

struct TransformArgs {
    std::vector<std::string> functions;
    std::string platform;
    std::string topology;
    std::string out;
};

struct TransformResult {
    IntegrationModel model;
    std::string text;
};

TransformResult do_transform(const std::vector<std::string>& function_texts, const std::string& platform_text,
                             const std::string& topology_text) {
    std::vector<FunctionModel> functions;
    for (const auto& t : function_texts) functions.push_back(parse_function_model(t));
    const PlatformDescriptor platform = parse_platform(platform_text);
    const ComponentTopology topology = parse_topology(topology_text);
    TransformOptions options;
    options.created_at = default_created_at();
    TransformResult r;
    r.model = transform(functions, platform, topology, options);
    r.text = serialize_integration_model(r.model);
    return r;
}

std::string counts_text(const EntityCounts& counts) {
    return "executables " + std::to_string(counts.executables) + ", services " + std::to_string(counts.services) +
           ", events " + std::to_string(counts.events);
}

json counts_json(const EntityCounts& counts) {
    return {{"executables", counts.executables}, {"services", counts.services}, {"events", counts.events}};
}

int cmd_transform(const TransformArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> texts;
        for (const auto& f : a.functions) texts.push_back(read_file(f));
        const auto r = do_transform(texts, read_file(a.platform), read_file(a.topology));
        const EntityCounts counts = count_entities(r.model);
        if (a.out.empty()) {
            out << r.text << '\n';
            err << counts_text(counts) << '\n';
            return kExitOk;
        }
        write_file(a.out, r.text + "\n");
        if (c.json()) {
            out << json{{"output", a.out}, {"counts", counts_json(counts)}}.dump(2) << '\n';
        } else {
            out << "wrote " << a.out << ": " << counts_text(counts) << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string integration;
    std::vector<std::string> components;
    std::string templates;
    std::string out = "generated";
};

json loc_json(const std::string& component, const LocReport& loc) {
    return {{"component", component},
            {"generated_loc", loc.generated_loc},
            {"manual_loc", loc.manual_loc},
            {"fraction_generated", loc.fraction_generated}};
}

std::string loc_text(const std::string& component, const LocReport& loc) {
    return component + ": generated " + std::to_string(loc.generated_loc) + " LoC, manual " +
           std::to_string(loc.manual_loc) + " LoC, fraction " + fixed(loc.fraction_generated, 3);
}

int cmd_generate(const GenerateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    try {
        const IntegrationModel model = parse_integration_model(read_file(a.integration));
        const TemplateSet templates = resolve_templates(a.templates);
        std::vector<std::string> components = a.components;
        if (components.empty()) {
            for (const auto& comp : model.components) components.push_back(comp.name);
        }
        json reports = json::array();
        for (const auto& name : components) {
            GeneratedArtifact artifact = generate_adapter(model, name, templates);
            write_artifact(artifact, fs::path(a.out) / name);
            const LocReport loc = loc_report(artifact);
            if (c.json()) {
                json j = loc_json(name, loc);
                j["directory"] = (fs::path(a.out) / name).generic_string();
                reports.push_back(j);
            } else {
                out << loc_text(name, loc) << '\n';
            }
        }
        if (c.json()) out << json{{"artifacts", reports}}.dump(2) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

// --- run --------------------------------------------------------------------

struct RunArgs {
    std::vector<std::string> manifests;
    std::string trace;
    std::string catalog;
    double duration_s = 0.0;
    std::string clock = "virtual";
    std::string harness = "adapter";
    std::string out;
};

std::vector<AdapterManifest> load_manifests(const std::vector<std::string>& paths) {
    std::vector<AdapterManifest> out;
    for (const auto& p : paths) {
        fs::path file = p;
        if (fs::is_directory(file)) file /= "adapter_manifest.json";
        out.push_back(parse_manifest(read_file(file)));
    }
    return out;
}

int cmd_run(const RunArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    try {
        const auto manifests = load_manifests(a.manifests);
        const auto catalog = load_catalog_file(a.catalog);
        const SignalTrace stimuli = load_trace_file(a.trace, catalog ? &*catalog : nullptr);
        RunOptions options;
        options.clock = *parse_clock_mode(a.clock);
        options.duration_us = static_cast<std::int64_t>(std::llround(a.duration_s * 1e6));
        RunTrace trace;
        SchedulerResult result;
        if (a.harness == "baseline") {
            trace = run_baseline_application(manifests, stimuli, options);
        } else {
            auto outcome = run_application(manifests, stimuli, options);
            trace = std::move(outcome.trace);
            result = outcome.scheduler;
        }
        if (!a.out.empty()) {
            trace.write(a.out);
        } else {
            out << trace.to_jsonl();
        }
        const std::size_t steps = trace.count("step_begin");
        if (c.json()) {
            err << json{{"harness", a.harness},
                        {"clock", a.clock},
                        {"steps", steps},
                        {"replayed", a.harness == "baseline" ? stimuli.records.size() : result.publications},
                        {"records", trace.size()}}
                       .dump()
                << '\n';
        } else if (!a.out.empty()) {
            out << a.harness << " run (" << a.clock << " clock): " << steps << " steps, "
                << (a.harness == "baseline" ? stimuli.records.size() : result.publications)
                << " replayed publications, " << trace.size() << " trace records -> " << a.out << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

// --- kpi --------------------------------------------------------------------

struct KpiArgs {
    std::vector<std::string> runs;
    std::string baseline;
    std::vector<std::string> events;
    std::vector<std::string> manifests;
};

std::vector<std::string> published_paths(const RunTrace& trace) {
    std::set<std::string> paths;
    for (const auto& r : trace.records()) {
        if (r.kind == "publish" && r.node != "replay") paths.insert(r.payload.value("path", ""));
    }
    return {paths.begin(), paths.end()};
}

int cmd_kpi(const KpiArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    try {
        std::map<std::string, double> cycles;
        for (const auto& m : load_manifests(a.manifests)) cycles[m.component_name] = m.cycle_time;
        std::vector<RunTrace> runs;
        for (const auto& r : a.runs) runs.push_back(RunTrace::read(r));
        json reports = json::array();
        bool divergent = false;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            KpiReport report = measure(runs[i], cycles);
            if (!a.baseline.empty() && i == 0) {
                const RunTrace baseline = RunTrace::read(a.baseline);
                const auto events = a.events.empty() ? published_paths(baseline) : a.events;
                report.equivalence = compare_behavior(baseline, runs[i], events);
                divergent = !report.equivalence->equivalent();
            }
            if (c.json()) {
                json j = to_json(report);
                j["run"] = a.runs[i];
                reports.push_back(j);
            } else {
                out << "run " << a.runs[i] << '\n' << to_text(report);
            }
        }
        if (c.json()) out << json{{"reports", reports}}.dump(2) << '\n';
        return divergent ? kExitFindings : kExitOk;
    } catch (const Error& e) {
        return report_error(err, e);
    }
}

// --- demo -------------------------------------------------------------------

struct DemoArgs {
    std::string out = "fnkit-demo";
    std::string clock = "virtual";
    double duration_s = 60.0;
};

int cmd_demo(const DemoArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    try {
        const fs::path root = a.out;
        const fs::path inputs = root / "inputs";
        const auto& fixtures = demo_fixtures();
        for (const auto& [name, text] : fixtures) write_file(inputs / name, text);
        const std::string trace_text = demo_trace_jsonl();
        write_file(inputs / "demo_trace.jsonl", trace_text);

        // validate
        const SignalTree catalog = load_catalog(fixtures.at("catalog.json"));
        std::size_t errors = 0;
        std::size_t warnings = 0;
        const std::vector<std::string> function_files = {"core_acc.json", "eco_mpc.json"};
        for (const auto& f : function_files) {
            const auto report = check_model_text(fixtures.at(f), ModelKind::kFunction, &catalog);
            errors += report.error_count();
            warnings += report.warning_count();
            print_findings(err, report, f);
        }

        // transform + generate, timed together as the configuration step
        const auto config_start = std::chrono::steady_clock::now();
        std::vector<std::string> texts;
        for (const auto& f : function_files) texts.push_back(fixtures.at(f));
        const auto transformed = do_transform(texts, fixtures.at("platform.json"), fixtures.at("topology.json"));
        write_file(root / "integration.json", transformed.text + "\n");
        std::vector<AdapterManifest> manifests;
        std::vector<ArtifactLoc> locs;
        for (const auto& comp : transformed.model.components) {
            GeneratedArtifact artifact = generate_adapter(transformed.model, comp.name, builtin_templates());
            write_artifact(artifact, root / "generated" / comp.name);
            const LocReport loc = loc_report(artifact);
            locs.push_back(ArtifactLoc{comp.name, loc.generated_loc, loc.manual_loc, loc.fraction_generated});
            manifests.push_back(artifact.manifest);
        }
        const double config_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - config_start).count();
        const EntityCounts counts = count_entities(transformed.model);

        // run both harnesses on the same input
        const SignalTrace stimuli = load_trace(trace_text, &catalog);
        RunOptions options;
        options.clock = *parse_clock_mode(a.clock);
        options.duration_us = static_cast<std::int64_t>(std::llround(a.duration_s * 1e6));
        auto adapter = run_application(manifests, stimuli, options);
        options.clock = ClockMode::kVirtual;
        const RunTrace baseline = run_baseline_application(manifests, stimuli, options);
        adapter.trace.write(root / "run_adapter.jsonl");
        baseline.write(root / "run_baseline.jsonl");

        // kpi
        KpiReport report = measure(adapter.trace, adapter.cycle_time_ms);
        report.equivalence = compare_behavior(baseline, adapter.trace, demo_equivalence_events());
        report.artifacts = locs;
        report.config_time_ms = config_ms;
        write_file(root / "kpi.json", to_json(report).dump(2) + "\n");

        const bool pass = errors == 0 && report.equivalence->equivalent();
        if (c.json()) {
            json j = to_json(report);
            j["validation"] = {{"errors", errors}, {"warnings", warnings}};
            j["counts"] = counts_json(counts);
            j["clock"] = a.clock;
            j["duration_s"] = a.duration_s;
            j["output"] = root.generic_string();
            j["result"] = pass ? "PASS" : "FAIL";
            out << j.dump(2) << '\n';
        } else {
            out << "fnkit demo: EcoControl (" << a.clock << " clock, " << fixed(a.duration_s, 1) << " s)\n";
            out << "validate   " << function_files.size() << " function models, " << errors << " errors, "
                << warnings << " warnings\n";
            out << "transform  " << counts_text(counts) << "\n";
            for (const auto& l : locs) {
                out << "generate   " << l.component << ": fraction " << fixed(l.fraction_generated, 3) << " ("
                    << l.generated_loc << " generated / " << l.manual_loc << " manual LoC)\n";
            }
            out << "config     transform + generate in " << fixed(config_ms, 1) << " ms\n";
            out << "run        " << adapter.trace.count("step_begin") << " steps, " << adapter.scheduler.publications
                << " replayed publications\n";
            out << to_text(report);
            out << "outputs    " << root.generic_string() << "/\n";
            out << "result     " << (pass ? "PASS" : "FAIL") << "\n";
        }
        return pass ? kExitOk : kExitFindings;
    } catch (const Error& e) {
        return report_error(err, e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fnkit: function models, integration models, adapters and a middleware simulator", "fnkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Common common;

    ValidateArgs validate;
    auto* v = app.add_subcommand("validate", "Validate function or integration model files");
    v->add_option("paths", validate.paths, "Model files")->required();
    v->add_option("--catalog", validate.catalog, "Signal catalog for conformance checks");
    v->add_option("--kind", validate.kind, "Model kind")->check(CLI::IsMember({"auto", "function", "integration"}));
    add_format(v, common);

    SchemaArgs schema;
    auto* s = app.add_subcommand("schema", "Print the JSON Schema of a model kind");
    s->add_option("--kind", schema.kind, "Model kind")->check(CLI::IsMember({"function", "integration"}));
    s->add_option("--out", schema.out, "Output file (default: stdout)");
    add_format(s, common);

    TransformArgs transform_args;
    auto* t = app.add_subcommand("transform", "Build the integration model from function models");
    t->add_option("functions", transform_args.functions, "Function model files")->required();
    t->add_option("--platform", transform_args.platform, "Platform descriptor")->required();
    t->add_option("--topology", transform_args.topology, "Component topology")->required();
    t->add_option("--out", transform_args.out, "Output file (default: stdout)");
    add_format(t, common);

    GenerateArgs generate;
    auto* g = app.add_subcommand("generate", "Generate function adapters for components");
    g->add_option("integration", generate.integration, "Integration model file")->required();
    g->add_option("--component", generate.components, "Component (default: all)");
    g->add_option("--templates", generate.templates, "Template directory (default: $FNKIT_TEMPLATES or built-in)");
    g->add_option("--out", generate.out, "Output root; files go to <out>/<component>/");
    add_format(g, common);

    RunArgs run;
    auto* r = app.add_subcommand("run", "Run adapter manifests against a signal trace");
    r->add_option("--manifest,--manifests", run.manifests, "Adapter manifest file or directory")->required();
    r->add_option("--trace", run.trace, "Signal trace (JSON lines)")->required();
    r->add_option("--catalog", run.catalog, "Signal catalog to check trace paths against");
    r->add_option("--duration", run.duration_s, "Simulated seconds (default: up to the last record)")
        ->check(CLI::NonNegativeNumber);
    r->add_option("--clock", run.clock, "Clock mode")->check(CLI::IsMember({"virtual", "wall"}));
    r->add_option("--harness", run.harness, "adapter: bus + lifecycle; baseline: direct calls")
        ->check(CLI::IsMember({"adapter", "baseline"}));
    r->add_option("--out", run.out, "RunTrace output file (default: stdout)");
    add_format(r, common);

    KpiArgs kpi;
    auto* k = app.add_subcommand("kpi", "Timing KPIs and behavior equivalence of run traces");
    k->add_option("--run", kpi.runs, "RunTrace file(s)")->required();
    k->add_option("--baseline", kpi.baseline, "Reference RunTrace compared with the first run");
    k->add_option("--events", kpi.events, "Signal paths to compare (default: all published)")->delimiter(',');
    k->add_option("--manifest,--manifests", kpi.manifests, "Manifests providing cycle times");
    add_format(k, common);

    DemoArgs demo;
    auto* d = app.add_subcommand("demo", "Run validate, transform, generate, run and kpi on the bundled demo");
    d->add_option("--out", demo.out, "Output directory");
    d->add_option("--clock", demo.clock, "Clock mode")->check(CLI::IsMember({"virtual", "wall"}));
    d->add_option("--duration", demo.duration_s, "Simulated seconds")->check(CLI::PositiveNumber);
    add_format(d, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run 'fnkit --help' for usage\n";
        return kExitIo;
    }

    if (v->parsed()) return cmd_validate(validate, common, out, err);
    if (s->parsed()) return cmd_schema(schema, out, err);
    if (t->parsed()) return cmd_transform(transform_args, common, out, err);
    if (g->parsed()) return cmd_generate(generate, common, out, err);
    if (r->parsed()) return cmd_run(run, common, out, err);
    if (k->parsed()) return cmd_kpi(kpi, common, out, err);
    if (d->parsed()) return cmd_demo(demo, common, out, err);
    return kExitIo;
}

}  // namespace fnkit
