// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/function_model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace fnkit {
namespace {

using nlohmann::json;
using test::minimal_function_json;

ErrorKind parse_error_kind(const json& doc) {
    try {
        parse_function_model(doc.dump());
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "document was accepted: " << doc.dump();
    return ErrorKind::kIo;
}

bool has_finding_at(const Error& e, const std::string& path) {
    return std::any_of(e.findings().begin(), e.findings().end(), [&](const Finding& f) { return f.path == path; });
}

TEST(FunctionModel, ConsumerAndProviderRolesAccepted) {
    const FunctionModel m = parse_function_model(minimal_function_json().dump());
    ASSERT_EQ(m.interface_data.size(), 2U);
    EXPECT_EQ(m.interface_data[0].role, InterfaceRole::kConsumer);
    EXPECT_EQ(m.interface_data[1].role, InterfaceRole::kProvider);
}

TEST(FunctionModel, ProducerRoleIsSchemaViolationAtThatField) {
    json doc = minimal_function_json();
    doc["InterfaceData"][0]["Role"] = "Producer";
    try {
        parse_function_model(doc.dump());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kSchema);
        EXPECT_TRUE(has_finding_at(e, "InterfaceData[0].Role")) << e.what();
    }
}

TEST(FunctionModel, DanglingSafetyReactionErrorIsUnresolved) {
    json doc = minimal_function_json();
    doc["SafetyReactionList"] = json::array({{{"Name", "ProbeSafe_SftyCondSts"},
                                              {"Datatype", {{"Category", "Boolean"}, {"Default", false}}},
                                              {"ErrorList", {"E99"}},
                                              {"Description", "x"}}});
    EXPECT_EQ(parse_error_kind(doc), ErrorKind::kUnresolvedReference);
}

TEST(FunctionModel, MalformedJsonIsSyntaxError) {
    try {
        parse_function_model("{\"Name\": ");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kJsonSyntax);
    }
}

TEST(FunctionModel, UnknownMemberRejected) {
    json doc = minimal_function_json();
    doc["SchedulingInfo"]["Colour"] = "red";
    EXPECT_EQ(parse_error_kind(doc), ErrorKind::kSchema);
}

TEST(FunctionModel, FiftyMillisecondCyclicFunctionHasNoFindings) {
    json doc = minimal_function_json();
    doc["SchedulingInfo"]["CycleTime"] = 50;
    const auto report = validate_function_model(decode_function_model(doc));
    EXPECT_TRUE(report.findings.empty());
}

TEST(FunctionModel, InvertedRangeIsErrorFinding) {
    json doc = minimal_function_json();
    doc["InterfaceData"][0]["Datatype"]["Min"] = 10;
    doc["InterfaceData"][0]["Datatype"]["Max"] = 5;
    doc["InterfaceData"][0]["Datatype"]["Default"] = 7;
    const auto report = validate_function_model(decode_function_model(doc));
    EXPECT_FALSE(report.valid());
    EXPECT_TRUE(report.has_code("range"));
}

TEST(FunctionModel, OffsetBeyondCycleIsErrorFinding) {
    json doc = minimal_function_json();
    doc["SchedulingInfo"]["CycleTime"] = 50;
    doc["SchedulingInfo"]["InitialOffset"] = 60;
    const auto report = validate_function_model(decode_function_model(doc));
    EXPECT_FALSE(report.valid());
    EXPECT_TRUE(report.has_code("scheduling"));
}

TEST(FunctionModel, DependencyCycleRejected) {
    json doc = minimal_function_json();
    auto error = [](const char* name, const char* dep) {
        return json{{"Name", name},
                    {"Datatype", {{"Category", "Boolean"}, {"Default", false}}},
                    {"MaturationTime", 0},
                    {"Severity", "Low"},
                    {"ResetTime", 0},
                    {"ResetCondition", "-"},
                    {"Description", "-"},
                    {"Dependencies", {dep}}};
    };
    doc["ErrorList"] = json::array({error("Probe_A_ErrorSts", "Probe_B_ErrorSts"),
                                    error("Probe_B_ErrorSts", "Probe_A_ErrorSts")});
    const auto report = validate_function_model(decode_function_model(doc));
    EXPECT_TRUE(report.has_code("dependency-cycle"));
}

TEST(FunctionModel, SerializeIsIdempotent) {
    for (const auto* file : {"core_acc.json", "eco_mpc.json"}) {
        const std::string once = serialize_function_model(test::demo_function(file));
        const std::string twice = serialize_function_model(parse_function_model(once));
        EXPECT_EQ(once, twice) << file;
    }
}

TEST(FunctionModel, ShortestRoundTripNumbers) {
    json doc = minimal_function_json();
    doc["InterfaceData"][0]["Datatype"]["Default"] = 0.5;
    const std::string text = serialize_function_model(parse_function_model(doc.dump()));
    EXPECT_NE(text.find("\"Default\":0.5"), std::string::npos);
    EXPECT_EQ(text.find("0.50000000000000011"), std::string::npos);
}

std::string shuffled_text(const std::string& text, std::mt19937& rng) {
    // Build the permuted document textually so member order really differs.
    std::function<nlohmann::ordered_json(const nlohmann::ordered_json&)> permute =
        [&](const nlohmann::ordered_json& j) -> nlohmann::ordered_json {
        if (j.is_array()) {
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& e : j) out.push_back(permute(e));
            return out;
        }
        if (!j.is_object()) return j;
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items()) keys.push_back(k);
        std::shuffle(keys.begin(), keys.end(), rng);
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const auto& k : keys) out[k] = permute(j.at(k));
        return out;
    };
    return permute(nlohmann::ordered_json::parse(text)).dump(1);
}

TEST(FunctionModel, MemberOrderDoesNotChangeCanonicalBytes) {
    std::mt19937 rng(7);
    for (const auto* file : {"core_acc.json", "eco_mpc.json"}) {
        const std::string& original = test::demo_text(file);
        const std::string expected = serialize_function_model(parse_function_model(original));
        for (int i = 0; i < 5; ++i) {
            const std::string permuted = shuffled_text(original, rng);
            ASSERT_NE(permuted, original);
            EXPECT_EQ(serialize_function_model(parse_function_model(permuted)), expected);
        }
    }
}

TEST(FunctionModel, RoundTripOverValidCorpus) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(test::source_dir() / "fixtures/function/valid")) {
        const FunctionModel m = parse_function_model(test::read_text(entry.path()));
        const FunctionModel again = parse_function_model(serialize_function_model(m));
        EXPECT_EQ(m, again) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 20);
}

TEST(FunctionModel, EveryEnumerationFieldRejectsForeignLiteral) {
    struct Case {
        std::function<void(json&)> mutate;
        const char* what;
    };
    const std::vector<Case> cases = {
        {[](json& d) { d["InterfaceData"][0]["Role"] = "Observer"; }, "Role"},
        {[](json& d) { d["InterfaceData"][0]["AsilInfo"] = "E"; }, "AsilInfo"},
        {[](json& d) { d["InterfaceData"][0]["RangeErrorAction"] = "Clamp"; }, "RangeErrorAction"},
        {[](json& d) { d["InterfaceData"][0]["Datatype"]["BaseType"] = "int128"; }, "BaseType"},
        {[](json& d) { d["InterfaceData"][0]["Datatype"]["Category"] = "Matrix"; }, "Category"},
        {[](json& d) { d["SchedulingInfo"]["ImplementedAsil"] = "qm"; }, "ImplementedAsil"},
        {[](json& d) { d["SchedulingInfo"]["Supervision"]["SupervisionType"] = "Logical+Alive"; }, "SupervisionType"},
        {[](json& d) {
             d["ParameterList"] = json::array({{{"Name", "P"},
                                                {"Description", "p"},
                                                {"AsilInfo", "QM"},
                                                {"Datatype", {{"Category", "Boolean"}, {"Default", false}}},
                                                {"Attribute", "Learning"}}});
         },
         "Attribute"},
    };
    for (const auto& c : cases) {
        json doc = minimal_function_json();
        c.mutate(doc);
        EXPECT_EQ(parse_error_kind(doc), ErrorKind::kSchema) << c.what;
    }
}

TEST(FunctionModel, LearningParameterAttributeAccepted) {
    json doc = minimal_function_json();
    doc["ParameterList"] = json::array({{{"Name", "Gain"},
                                         {"Description", "adapted"},
                                         {"AsilInfo", "QM"},
                                         {"Datatype", {{"Category", "Boolean"}, {"Default", false}}},
                                         {"Attribute", "LearningParameter"}}});
    const FunctionModel m = parse_function_model(doc.dump());
    ASSERT_EQ(m.parameters.size(), 1U);
    EXPECT_EQ(m.parameters[0].attribute, ParameterAttribute::kLearningParameter);
}

// Every name referenced by an accepted model resolves to a declaration.
TEST(FunctionModel, ReferenceClosureOverValidCorpus) {
    for (const auto& entry : std::filesystem::directory_iterator(test::source_dir() / "fixtures/function/valid")) {
        const FunctionModel m = parse_function_model(test::read_text(entry.path()));
        std::set<std::string> errors;
        for (const auto& e : m.errors) errors.insert(e.name);
        for (const auto& e : m.errors) {
            for (const auto& d : e.dependencies) EXPECT_TRUE(errors.count(d)) << entry.path() << " " << d;
        }
        for (const auto& r : m.safety_reactions) {
            for (const auto& e : r.error_list) EXPECT_TRUE(errors.count(e)) << entry.path() << " " << e;
        }
        for (const auto& i : m.interface_data) {
            if (i.timeout_error) EXPECT_TRUE(errors.count(*i.timeout_error)) << entry.path();
        }
        const WatchdogSpec w = m.effective_watchdog();
        if (w.alive_limits) EXPECT_TRUE(errors.count(w.alive_limits->error_name));
        if (w.deadline_limits) EXPECT_TRUE(errors.count(w.deadline_limits->error_name));
        if (w.logical_check) EXPECT_TRUE(errors.count(w.logical_check->error_name));
        std::set<std::string> types;
        for (const auto& d : m.declared_datatypes()) types.insert(*d.declared_name());
        for (const auto& i : m.interface_data) {
            if (const auto* r = i.datatype.get_if<TypeReference>()) EXPECT_TRUE(types.count(r->type_name));
        }
    }
}

TEST(FunctionModel, AsilOrderingIsTotalAndTransitive) {
    const std::vector<std::string> order = {"QM", "A", "B", "C", "D"};
    std::vector<AsilLevel> levels;
    for (const auto& s : order) levels.push_back(*parse_asil(s));
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(to_string(levels[i]), order[i]);
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_EQ(levels[i] < levels[j], i < j);
            // exactly one of <, ==, > holds
            const int relations = int(levels[i] < levels[j]) + int(levels[i] == levels[j]) + int(levels[j] < levels[i]);
            EXPECT_EQ(relations, 1);
            for (std::size_t k = 0; k < 5; ++k) {
                if (levels[i] < levels[j] && levels[j] < levels[k]) EXPECT_TRUE(levels[i] < levels[k]);
            }
        }
    }
    EXPECT_FALSE(parse_asil("E"));
}

TEST(FunctionModel, SupervisionLiteralsRoundTrip) {
    EXPECT_EQ(SupervisionType::literals().size(), 8U);
    for (const auto& literal : SupervisionType::literals()) {
        const auto parsed = SupervisionType::parse(literal);
        ASSERT_TRUE(parsed) << literal;
        EXPECT_EQ(parsed->to_string(), literal);
    }
}

TEST(FunctionModel, SchemaIsValidJsonWithRequiredName) {
    const json schema = json::parse(emit_function_schema());
    EXPECT_EQ(schema["$schema"], "https://json-schema.org/draft/2020-12/schema");
    const auto& required = schema["$defs"]["Function"]["required"];
    EXPECT_NE(std::find(required.begin(), required.end(), "Name"), required.end());
}

TEST(FunctionModel, EmptyDocumentRejected) { EXPECT_EQ(parse_error_kind(json::object()), ErrorKind::kSchema); }

}  // namespace
}  // namespace fnkit
