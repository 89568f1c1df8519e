// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "fnkit/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fnkit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fnkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name, std::ios::binary) << text;
    }
    std::string fixture(const std::string& name) const {
        return (test::source_dir() / "fixtures/demo" / name).string();
    }
    fs::path dir_;
};

TEST_F(Cli, ValidateGoodModelExitsZero) {
    const auto r = cli({"validate", fixture("core_acc.json"), "--catalog", fixture("catalog.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(Cli, ValidateFindingsExitOne) {
    json doc = json::parse(test::demo_text("core_acc.json"));
    doc["SchedulingInfo"]["CycleTime"] = -5;
    write("bad.json", doc.dump());
    const auto r = cli({"validate", path("bad.json"), "--format", "json"});
    EXPECT_EQ(r.code, kExitFindings);
    EXPECT_FALSE(r.out.empty());
}

TEST_F(Cli, MissingFileExitsTwo) {
    EXPECT_EQ(cli({"validate", path("absent.json")}).code, kExitIo);
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli({}).code, kExitIo);
    EXPECT_EQ(cli({"bogus"}).code, kExitIo);
    EXPECT_EQ(cli({"run", "--clock", "sundial"}).code, kExitIo);
}

TEST_F(Cli, SchemaIsDraft202012) {
    for (const char* kind : {"function", "integration"}) {
        const auto r = cli({"schema", "--kind", kind});
        ASSERT_EQ(r.code, kExitOk);
        EXPECT_EQ(json::parse(r.out)["$schema"], "https://json-schema.org/draft/2020-12/schema");
    }
}

TEST_F(Cli, TransformGenerateRunKpi) {
    const auto t = cli({"transform", fixture("core_acc.json"), fixture("eco_mpc.json"), "--platform",
                        fixture("platform.json"), "--topology", fixture("topology.json"), "--out",
                        path("integration.json")});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    EXPECT_NE(t.out.find("executables 2, services 10, events 13"), std::string::npos) << t.out;

    const auto g = cli({"generate", path("integration.json"), "--out", path("generated")});
    ASSERT_EQ(g.code, kExitOk) << g.err;
    EXPECT_TRUE(fs::exists(dir_ / "generated/CoreAccSwc/adapter_manifest.json"));
    EXPECT_TRUE(fs::exists(dir_ / "generated/EcoMpcSwc/adapter_manifest.json"));

    const std::vector<std::string> common = {"--manifests", path("generated/CoreAccSwc"),
                                             "--manifests", path("generated/EcoMpcSwc"),
                                             "--trace",     fixture("demo_trace.jsonl"),
                                             "--duration",  "10"};
    auto args = std::vector<std::string>{"run", "--out", path("a.jsonl")};
    args.insert(args.end(), common.begin(), common.end());
    ASSERT_EQ(cli(args).code, kExitOk);
    args = {"run", "--harness", "baseline", "--out", path("b.jsonl")};
    args.insert(args.end(), common.begin(), common.end());
    ASSERT_EQ(cli(args).code, kExitOk);

    const auto k = cli({"kpi", "--run", path("a.jsonl"), "--baseline", path("b.jsonl"), "--format", "json"});
    EXPECT_EQ(k.code, kExitOk) << k.err;
    EXPECT_TRUE(json::parse(k.out)["reports"][0]["equivalence"]["equivalent"].get<bool>());
}

TEST_F(Cli, KpiDivergenceExitsOne) {
    write("a.jsonl", "{\"t_us\":0,\"kind\":\"publish\",\"node\":\"N\",\"payload\":{\"path\":\"A.B\",\"seq\":1,\"value\":1}}\n");
    write("b.jsonl", "{\"t_us\":0,\"kind\":\"publish\",\"node\":\"N\",\"payload\":{\"path\":\"A.B\",\"seq\":1,\"value\":2}}\n");
    const auto r = cli({"kpi", "--run", path("a.jsonl"), "--baseline", path("b.jsonl"), "--events", "A.B"});
    EXPECT_EQ(r.code, kExitFindings) << r.out << r.err;
}

TEST_F(Cli, RunTwiceIsByteIdentical) {
    ASSERT_EQ(cli({"demo", "--out", path("demo"), "--duration", "5"}).code, kExitOk);
    const std::vector<std::string> base = {"run", "--manifests", path("demo/generated/CoreAccSwc"), "--manifests",
                                           path("demo/generated/EcoMpcSwc"), "--trace",
                                           path("demo/inputs/demo_trace.jsonl"), "--duration", "5"};
    auto a = base;
    a.insert(a.end(), {"--out", path("r1.jsonl")});
    auto b = base;
    b.insert(b.end(), {"--out", path("r2.jsonl")});
    ASSERT_EQ(cli(a).code, kExitOk);
    ASSERT_EQ(cli(b).code, kExitOk);
    EXPECT_EQ(test::read_text(path("r1.jsonl")), test::read_text(path("r2.jsonl")));
}

TEST_F(Cli, DemoPasses) {
    const auto r = cli({"demo", "--out", path("demo"), "--duration", "10"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_NE(r.out.find("result     PASS"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(dir_ / "demo/kpi.json"));
    EXPECT_TRUE(fs::exists(dir_ / "demo/run_adapter.jsonl"));
    EXPECT_TRUE(fs::exists(dir_ / "demo/run_baseline.jsonl"));
}

TEST_F(Cli, VersionAndHelpExitZero) {
    EXPECT_EQ(cli({"--version"}).code, kExitOk);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace fnkit
