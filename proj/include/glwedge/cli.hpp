// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace glwedge
{

// Exit codes: 0 success, 1 solver failure, 2 validation failure, 64 usage error.
constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

// Parses argv, dispatches the subcommand and maps errors to exit codes.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace glwedge
