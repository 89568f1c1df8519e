// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

/// @file cli.hpp
/// @brief The `fnkit` command line as a library call.
///
/// Exit codes: 0 success, 1 findings or failed checks (validation errors,
/// behavior divergence, model errors), 2 I/O failures and usage errors.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fnkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitIo = 2;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnkit
