#pragma once

#include "logvar/config.hpp"

namespace logvar {

// Exit codes: 0 success, 2 config error, 3 solver non-convergence,
// 4 invariant violation in verify.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

// Executes the configured command and writes its artifacts (plus
// manifest.json) under cfg.out_dir.
int run(const RunConfig& cfg);

}  // namespace logvar
