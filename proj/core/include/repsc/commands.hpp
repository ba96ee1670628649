#pragma once

#include <filesystem>

#include "repsc/config.hpp"

namespace repsc {

/// Batch subcommands behind the repsc CLI. Each validates inputs, writes its
/// report files under `out`, and returns a process exit code:
///   0 success, 3 tolerance failure (named in the report and on stderr).
/// Config errors (2) and non-convergence (4) surface as exceptions for the
/// caller to map.
int cmd_mehler_check(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_scatter(const RunConfig& cfg, const std::filesystem::path& out, int jobs = 1);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, int jobs = 1);
int cmd_reconstruct(const RunConfig& cfg, const std::filesystem::path& out, int jobs = 1);

/// Shared deterministic number formatting for every CSV cell (%.12e).
std::string csv_num(double v);

} // namespace repsc
