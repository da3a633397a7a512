// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "collabflow/types.hpp"

namespace collabflow::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // validation/config faults
inline constexpr int kExitRuntime = 2;     // unreadable/malformed input, IO failure

/// `validate`: prints validation faults; 0 iff none.
int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err);

/// `run`: executes the scenario, writes trace.jsonl, report.json and
/// comparison.csv into out_dir, prints a summary.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& out,
            std::ostream& err);

/// `indicators`: offline evaluation of an indicator spec (bare indicator list
/// or full scenario config) over a stored trace.
int cmd_indicators(const std::string& trace_path, const std::string& spec_path,
                   const std::optional<std::string>& out_path,
                   std::optional<SimTime> window_override, const std::string& format,
                   std::ostream& out, std::ostream& err);

/// `replay`: reconstructs per-instance activity sequences from a trace.
int cmd_replay(const std::string& trace_path, std::ostream& out, std::ostream& err);

/// `case`: writes the built-in request-for-proposal configuration.
int cmd_emit_case(const std::string& out_path, std::ostream& out, std::ostream& err);

}  // namespace collabflow::cli
