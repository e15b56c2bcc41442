// Copyright 2026 the stark-shell authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "starkshell/result_io.hpp"

namespace starkshell {

// Executes config.command and returns the full record.
//
// Commands: bound-states, stark-shift, resonance-1d, det-scan-3d,
// resonance-3d, width-fit, validate, emit-plotdata.
//
// Configuration problems throw std::invalid_argument or std::domain_error
// before any computation starts. Numerical failures mid-run are captured as
// record.status = "failed: ..." with every row computed so far kept, so
// callers can persist partial output.
ResultRecord run(const RunConfig& config);

}  // namespace starkshell
