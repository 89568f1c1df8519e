// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/demo.hpp"

#include <utility>

namespace fnkit {

namespace {
#include "demo_fixtures.inc"
}  // namespace

const std::map<std::string, std::string>& demo_fixtures() {
    static const std::map<std::string, std::string> files = [] {
        std::map<std::string, std::string> out;
        for (const auto& [name, text] : kDemoFixtures) out.emplace(name, text);
        return out;
    }();
    return files;
}

}  // namespace fnkit
