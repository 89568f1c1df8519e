#!/usr/bin/env python3
# Copyright 2026 fnkit Contributors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates fixtures/function and fixtures/integration from the demo models.

valid/             accepted by the built-in validator and by the schema
invalid/           rejected by both (structural defects)
semantic_invalid/  schema-conformant but rejected by the built-in checks

Usage: make_corpus.py <integration.json>   (e.g. from `fnkit demo`)
"""

import copy
import json
import pathlib
import shutil
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
DEMO = ROOT / "fixtures" / "demo"
OUT = ROOT / "fixtures"


def load(name):
    return json.loads((DEMO / name).read_text())


def numerical(base, lo, hi, unit="", default=0):
    return {"Category": "Numerical", "BaseType": base, "Min": lo, "Max": hi, "Unit": unit, "Default": default}


def boolean_error(name, mat=0, reset=0, deps=None):
    e = {
        "Name": name,
        "Datatype": {"Category": "Boolean", "Default": False},
        "MaturationTime": mat,
        "Severity": "Low",
        "ResetTime": reset,
        "ResetCondition": "condition cleared",
        "Description": "test error",
    }
    if deps:
        e["Dependencies"] = deps
    return e


def minimal(name="Probe"):
    return {
        "Name": name,
        "Description": "minimal function",
        "InterfaceData": [
            {
                "Name": "Vehicle.Speed",
                "Description": "speed",
                "Role": "Consumer",
                "Type": "Signal",
                "Datatype": numerical("float32", -250, 250, "km/h"),
                "AsilInfo": "QM",
            },
            {
                "Name": "Vehicle.ADAS.Probe.Output",
                "Description": "output",
                "Role": "Provider",
                "Type": "Signal",
                "Datatype": numerical("uint8", 0, 10),
                "AsilInfo": "QM",
            },
        ],
        "SchedulingInfo": {
            "RunType": "cyclic",
            "CycleTime": 100,
            "Description": "periodic",
            "ImplementedAsil": "QM",
            "Supervision": {"SupervisionType": "None"},
        },
    }


def function_valid():
    core, eco = load("core_acc.json"), load("eco_mpc.json")
    out = {"core_acc": core, "eco_mpc": eco, "minimal": minimal()}

    for base, lo, hi in [("uint16", 0, 1000), ("int8", -100, 100), ("int32", -5, 5), ("uint64", 0, 1e9),
                         ("float64", -1e6, 1e6), ("int64", -10, 10)]:
        m = minimal()
        m["InterfaceData"][1]["Datatype"] = numerical(base, lo, hi, "", 0)
        out["base_" + base] = m

    m = minimal()
    m["InterfaceData"][1]["Datatype"] = {"Category": "Boolean", "Default": True}
    out["boolean_output"] = m

    m = minimal()
    m["InterfaceData"][1]["Datatype"] = {"Category": "String", "MaxLength": 16, "Default": "idle"}
    out["string_output"] = m

    m = minimal()
    m["InterfaceData"][1]["Datatype"] = {
        "Category": "Enumeration",
        "TypeName": "ProbeMode",
        "Literals": [{"Name": "Off", "Value": 0}, {"Name": "On", "Value": 1}],
    }
    out["enum_output"] = m

    m = minimal()
    m["InterfaceData"][1]["Datatype"] = {
        "Category": "Struct",
        "TypeName": "ProbeSample",
        "Fields": [
            {"Name": "value", "Datatype": numerical("float32", -1, 1)},
            {"Name": "valid", "Datatype": {"Category": "Boolean", "Default": False}},
        ],
    }
    out["struct_output"] = m

    m = minimal()
    m["InterfaceData"][1]["Datatype"] = {
        "Category": "Struct",
        "TypeName": "ProbeSample",
        "Fields": [{"Name": "value", "Datatype": numerical("float32", -1, 1)}],
    }
    m["InterfaceData"].append({
        "Name": "Vehicle.ADAS.Probe.Copy",
        "Description": "same struct by reference",
        "Role": "Provider",
        "Type": "Signal",
        "Datatype": {"Category": "TypeReference", "TypeName": "ProbeSample"},
        "AsilInfo": "QM",
    })
    out["type_reference"] = m

    m = minimal()
    m["InterfaceData"][0].update({"TimeoutValue": 200, "TimeoutError": "Probe_SpeedTimeout_ErrorSts",
                                  "RangeErrorAction": "Default"})
    m["ErrorList"] = [boolean_error("Probe_SpeedTimeout_ErrorSts", 50, 100)]
    out["timeout_error"] = m

    m = minimal()
    m["ErrorList"] = [boolean_error("Probe_A_ErrorSts"), boolean_error("Probe_B_ErrorSts", 10, 20, ["Probe_A_ErrorSts"])]
    m["SafetyReactionList"] = [{
        "Name": "ProbeSafe_SftyCondSts",
        "Datatype": {"Category": "Boolean", "Default": False},
        "ErrorList": ["Probe_A_ErrorSts", "Probe_B_ErrorSts"],
        "Description": "safe state",
    }]
    out["dependencies_and_reaction"] = m

    m = minimal()
    m["ErrorList"] = [boolean_error("Probe_Alive_ErrorSts")]
    m["SchedulingInfo"]["Supervision"] = {
        "SupervisionType": "Alive",
        "AliveLimits": {"MinIndications": 4, "MaxIndications": 6, "ReferenceWindow": 500,
                        "ErrorName": "Probe_Alive_ErrorSts"},
    }
    out["alive_supervision"] = m

    m = minimal()
    m["ErrorList"] = [boolean_error("Probe_Deadline_ErrorSts")]
    m["SchedulingInfo"]["Supervision"] = {
        "SupervisionType": "Deadline",
        "DeadlineLimits": {"MinDuration": 0, "MaxDuration": 20, "ErrorName": "Probe_Deadline_ErrorSts"},
    }
    out["deadline_supervision"] = m

    m = minimal()
    m["ErrorList"] = [boolean_error("Probe_Flow_ErrorSts")]
    m["SchedulingInfo"]["Supervision"] = {
        "SupervisionType": "Logical",
        "LogicalCheck": {"ExpectedOrder": ["A", "B"], "ErrorName": "Probe_Flow_ErrorSts"},
    }
    out["logical_supervision"] = m

    m = minimal()
    m["SchedulingInfo"].update({"InitialOffset": 20, "Priority": 7, "DebounceTime": 50, "StackSize": 4096})
    out["scheduling_options"] = m

    m = copy.deepcopy(core)
    m["Name"] = "CoreAccB"
    m["SchedulingInfo"]["CycleTime"] = 20
    out["core_acc_fast"] = m

    m = copy.deepcopy(eco)
    for e in m["ErrorList"]:
        e["MaturationTime"] = 0
        e["ResetTime"] = 0
    out["eco_mpc_immediate_errors"] = m

    m = minimal()
    m["ParameterList"] = [
        {"Name": "GainLearned", "Description": "adapted gain", "AsilInfo": "QM",
         "Datatype": numerical("float32", 0, 2, "", 1), "Attribute": "LearningParameter"},
        {"Name": "GainFixed", "Description": "calibrated gain", "AsilInfo": "A",
         "Datatype": numerical("float32", 0, 2, "", 1), "Attribute": "Normal", "RangeErrorAction": "Init"},
    ]
    out["parameters"] = m

    m = minimal()
    m["InterfaceData"][0]["AsilInfo"] = "D"
    m["SchedulingInfo"]["ImplementedAsil"] = "D"
    out["asil_d"] = m
    return out


def function_invalid():
    base = minimal()
    out = {}

    def mutate(name, fn):
        m = copy.deepcopy(base)
        fn(m)
        out[name] = m

    mutate("missing_name", lambda m: m.pop("Name"))
    mutate("missing_interface_data", lambda m: m.pop("InterfaceData"))
    mutate("missing_scheduling", lambda m: m.pop("SchedulingInfo"))
    mutate("unknown_member", lambda m: m.update({"Colour": "red"}))
    mutate("name_not_identifier", lambda m: m.update({"Name": "probe-1"}))
    mutate("name_wrong_type", lambda m: m.update({"Name": 42}))
    mutate("interface_data_object", lambda m: m.update({"InterfaceData": {}}))
    mutate("bad_role", lambda m: m["InterfaceData"][0].update({"Role": "Listener"}))
    mutate("bad_asil", lambda m: m["InterfaceData"][0].update({"AsilInfo": "E"}))
    mutate("bad_signal_path", lambda m: m["InterfaceData"][0].update({"Name": "Vehicle..Speed"}))
    mutate("bad_base_type", lambda m: m["InterfaceData"][0]["Datatype"].update({"BaseType": "float16"}))
    mutate("missing_unit", lambda m: m["InterfaceData"][0]["Datatype"].pop("Unit"))
    mutate("min_is_string", lambda m: m["InterfaceData"][0]["Datatype"].update({"Min": "0"}))
    mutate("unknown_category", lambda m: m["InterfaceData"][0].update({"Datatype": {"Category": "Matrix"}}))
    mutate("negative_cycle_time", lambda m: m["SchedulingInfo"].update({"CycleTime": -5}))
    mutate("cycle_time_string", lambda m: m["SchedulingInfo"].update({"CycleTime": "50ms"}))
    mutate("bad_supervision_type", lambda m: m["SchedulingInfo"]["Supervision"].update({"SupervisionType": "Heartbeat"}))
    mutate("alive_without_limits", lambda m: m["SchedulingInfo"]["Supervision"].update({"SupervisionType": "Alive"}))
    mutate("timeout_without_error", lambda m: m["InterfaceData"][0].update({"TimeoutValue": 100}))
    mutate("error_missing_fields", lambda m: m.update({"ErrorList": [{"Name": "Probe_X_ErrorSts"}]}))
    mutate("bad_range_action", lambda m: m["InterfaceData"][0].update({"RangeErrorAction": "Clamp"}))
    mutate("array_without_length", lambda m: m["InterfaceData"][1].update(
        {"Datatype": {"Category": "Array", "Element": numerical("uint8", 0, 1)}}))
    mutate("bad_parameter_attribute", lambda m: m.update({"ParameterList": [
        {"Name": "Gain", "Description": "gain", "AsilInfo": "QM", "Datatype": numerical("float32", 0, 2),
         "Attribute": "Learned"}]}))
    mutate("stack_size_negative", lambda m: m["SchedulingInfo"].update({"StackSize": -1}))
    return out


def function_semantic_invalid():
    base = minimal()
    out = {}

    def mutate(name, fn):
        m = copy.deepcopy(base)
        fn(m)
        out[name] = m

    mutate("min_above_max", lambda m: m["InterfaceData"][0]["Datatype"].update({"Min": 10, "Max": 0}))
    mutate("default_outside_range", lambda m: m["InterfaceData"][0]["Datatype"].update({"Default": 999}))
    mutate("range_not_representable", lambda m: m["InterfaceData"][1]["Datatype"].update({"Max": 300}))
    mutate("duplicate_interface", lambda m: m["InterfaceData"].append(copy.deepcopy(m["InterfaceData"][0])))
    mutate("unresolved_timeout_error", lambda m: m["InterfaceData"][0].update(
        {"TimeoutValue": 100, "TimeoutError": "Probe_Missing_ErrorSts"}))
    mutate("dependency_cycle", lambda m: m.update({"ErrorList": [
        boolean_error("Probe_A_ErrorSts", deps=["Probe_B_ErrorSts"]),
        boolean_error("Probe_B_ErrorSts", deps=["Probe_A_ErrorSts"])]}))
    mutate("unresolved_type_reference", lambda m: m["InterfaceData"][1].update(
        {"Datatype": {"Category": "TypeReference", "TypeName": "Nowhere"}}))
    mutate("alive_error_undeclared", lambda m: m["SchedulingInfo"].update({"Supervision": {
        "SupervisionType": "Alive",
        "AliveLimits": {"MinIndications": 1, "MaxIndications": 2, "ReferenceWindow": 100, "ErrorName": "Nope"}}}))
    return out


def integration_valid(base):
    out = {"demo": base}

    def mutate(name, fn):
        m = copy.deepcopy(base)
        fn(m)
        out[name] = m

    for i, stamp in enumerate(["2026-01-01T00:00:00Z", "2030-12-31T23:59:59Z", "2000-02-29T12:00:00Z"]):
        mutate(f"created_at_{i}", lambda m, s=stamp: m["MetaInformation"].update({"CreatedAt": s}))
    mutate("binary_serialization", lambda m: m["MetaInformation"].update({"Serialization": "binary-le"}))
    mutate("transport_label", lambda m: m["MetaInformation"].update({"TransportLabel": "someip"}))
    mutate("empty_transport_label", lambda m: m["MetaInformation"].update({"TransportLabel": ""}))
    mutate("platform_name", lambda m: m["MetaInformation"].update({"PlatformName": "bench-rig"}))
    mutate("tool_version", lambda m: m["MetaInformation"].update({"ToolVersion": "fnkit 0.9.0"}))
    mutate("application_name", lambda m: m["ApplicationInformation"].update({"Name": "EcoControlB"}))
    mutate("application_description", lambda m: m["ApplicationInformation"].update({"Description": ""}))
    mutate("no_data_types", lambda m: m.pop("DataTypes", None))
    mutate("function_group_modes", lambda m: m["ComponentList"][0].update(
        {"FunctionGroupModes": ["Running", "Degraded"]}))
    mutate("no_function_group_modes", lambda m: m["ComponentList"][1].update({"FunctionGroupModes": []}))
    mutate("renamed_executables", lambda m: [c.update({"ExecutableName": c["ExecutableName"] + "_app"})
                                             for c in m["ComponentList"]])
    mutate("component_order_swapped", lambda m: m["ComponentList"].reverse())
    mutate("empty_component_list", lambda m: m.update({"ComponentList": [], "ApplicationInformation": {
        "Name": "Empty", "Description": "no components", "ExternalSignals": []}}))
    def single_component(m):
        m["ComponentList"].pop()
        remaining = m["ComponentList"][0]
        required = {e["SourcePath"] for s in remaining["ServiceInterfaceList"] if s["Direction"] == "Required"
                    for e in s["Events"]}
        m["ApplicationInformation"]["ExternalSignals"] = sorted(required)
        names = {f["Name"] for f in remaining["FunctionList"]}
        m["MetaInformation"]["SourceFunctionModelDigests"] = [
            d for d in m["MetaInformation"]["SourceFunctionModelDigests"] if d["Function"] in names]

    mutate("single_component", single_component)
    mutate("component_names", lambda m: [c.update({"Name": c["Name"] + "2"}) for c in m["ComponentList"]])
    mutate("service_methods", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0].update(
        {"Methods": [{"Name": "Reset", "Description": "reset request"}]}))
    mutate("component_parameters", lambda m: m["ComponentList"][0].update({"ParameterList": []}))
    return out


def integration_invalid(base):
    out = {}

    def mutate(name, fn):
        m = copy.deepcopy(base)
        fn(m)
        out[name] = m

    mutate("missing_meta", lambda m: m.pop("MetaInformation"))
    mutate("missing_application", lambda m: m.pop("ApplicationInformation"))
    mutate("missing_component_list", lambda m: m.pop("ComponentList"))
    mutate("unknown_top_member", lambda m: m.update({"Extra": 1}))
    mutate("bad_created_at", lambda m: m["MetaInformation"].update({"CreatedAt": "yesterday"}))
    mutate("bad_serialization", lambda m: m["MetaInformation"].update({"Serialization": "xml"}))
    mutate("bad_digest", lambda m: m["MetaInformation"]["SourceFunctionModelDigests"][0].update({"Digest": "md5:00"}))
    mutate("missing_tool_version", lambda m: m["MetaInformation"].pop("ToolVersion"))
    mutate("empty_platform_name", lambda m: m["MetaInformation"].update({"PlatformName": ""}))
    mutate("missing_external_signals", lambda m: m["ApplicationInformation"].pop("ExternalSignals"))
    mutate("bad_external_signal", lambda m: m["ApplicationInformation"]["ExternalSignals"].append("not a path"))
    mutate("component_missing_executable", lambda m: m["ComponentList"][0].pop("ExecutableName"))
    mutate("component_unknown_member", lambda m: m["ComponentList"][0].update({"Host": "ecu1"}))
    mutate("component_list_object", lambda m: m.update({"ComponentList": {}}))
    mutate("bad_direction", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0].update({"Direction": "Both"}))
    mutate("service_id_string", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0].update({"ServiceId": "0x1000"}))
    mutate("negative_event_id", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0]["Events"][0].update(
        {"EventId": -1}))
    mutate("event_missing_datatype", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0]["Events"][0].pop(
        "Datatype"))
    mutate("event_bad_source_path", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0]["Events"][0].update(
        {"SourcePath": "Vehicle.Speed."}))
    mutate("embedded_function_invalid", lambda m: m["ComponentList"][0]["FunctionList"][0].pop("SchedulingInfo"))
    mutate("function_list_string", lambda m: m["ComponentList"][0].update({"FunctionList": "CoreAcc"}))
    mutate("missing_events", lambda m: m["ComponentList"][0]["ServiceInterfaceList"][0].pop("Events"))
    return out


def integration_semantic_invalid(base):
    out = {}

    def mutate(name, fn):
        m = copy.deepcopy(base)
        fn(m)
        out[name] = m

    mutate("duplicate_component", lambda m: m["ComponentList"].append(copy.deepcopy(m["ComponentList"][0])))
    mutate("digest_mismatch", lambda m: m["ComponentList"][0]["FunctionList"][0].update({"Description": "edited"}))
    mutate("duplicate_service_id", lambda m: [s.update({"ServiceId": 4096}) for c in m["ComponentList"]
                                              for s in c["ServiceInterfaceList"]])
    mutate("required_without_provider", lambda m: m["ApplicationInformation"].update({"ExternalSignals": []}))
    return out


def write_set(kind, label, models):
    d = OUT / kind / label
    d.mkdir(parents=True, exist_ok=True)
    for i, (name, model) in enumerate(models.items()):
        (d / f"{i:03d}_{name}.json").write_text(json.dumps(model, indent=2, sort_keys=True) + "\n")


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    integration = json.loads(pathlib.Path(sys.argv[1]).read_text())
    for kind in ("function", "integration"):
        if (OUT / kind).exists():
            shutil.rmtree(OUT / kind)
    write_set("function", "valid", function_valid())
    write_set("function", "invalid", function_invalid())
    write_set("function", "semantic_invalid", function_semantic_invalid())
    write_set("integration", "valid", integration_valid(integration))
    write_set("integration", "invalid", integration_invalid(integration))
    write_set("integration", "semantic_invalid", integration_semantic_invalid(integration))


if __name__ == "__main__":
    main()
