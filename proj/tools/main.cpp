// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "collabflow/commands.hpp"

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("COLLABFLOW_OUT")) return env;
  return "out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collabflow: monitor, score and regulate collaborative workflows"};
  app.require_subcommand(1);

  std::string config_path, trace_path, out_dir = default_out_dir(), out_path;
  std::string case_path = "rfp-case.json";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> window;

  auto* validate = app.add_subcommand("validate", "check a scenario configuration");
  validate->add_option("--config", config_path, "scenario configuration (JSON)")
      ->required();

  auto* run = app.add_subcommand("run", "execute a scenario and write its artifacts");
  run->add_option("--config", config_path, "scenario configuration (JSON)")->required();
  run->add_option("--out", out_dir,
                  "output directory (default: $COLLABFLOW_OUT or ./out)");
  run->add_option("--seed", seed, "override the configured seed");

  auto* indicators =
      app.add_subcommand("indicators", "evaluate indicators offline over a stored trace");
  indicators->add_option("--trace", trace_path, "trace file (JSON lines)")->required();
  indicators->add_option("--config", config_path, "indicator spec or full configuration")
      ->required();
  indicators->add_option("--out", out_path, "also write the result to this file");
  indicators->add_option("--window", window, "override every indicator window span");
  indicators->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* replay =
      app.add_subcommand("replay", "reconstruct per-instance activity sequences");
  replay->add_option("--trace", trace_path, "trace file (JSON lines)")->required();

  auto* emit_case = app.add_subcommand("case", "write the built-in RFP case configuration");
  emit_case->add_option("--out", case_path, "target file (default rfp-case.json)");

  CLI11_PARSE(app, argc, argv);

  using namespace collabflow::cli;
  if (validate->parsed()) return cmd_validate(config_path, std::cout, std::cerr);
  if (run->parsed()) return cmd_run(config_path, out_dir, seed, std::cout, std::cerr);
  if (indicators->parsed())
    return cmd_indicators(trace_path, config_path,
                          out_path.empty() ? std::nullopt
                                           : std::optional<std::string>(out_path),
                          window, format, std::cout, std::cerr);
  if (replay->parsed()) return cmd_replay(trace_path, std::cout, std::cerr);
  if (emit_case->parsed()) return cmd_emit_case(case_path, std::cout, std::cerr);
  return kExitRuntime;
}
