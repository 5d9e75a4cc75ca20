#pragma once

#include <filesystem>
#include <optional>
#include <variant>

#include "hdrrt/fusion.hpp"
#include "hdrrt/strategies.hpp"

namespace hdrrt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProcessing = 1;
inline constexpr int kExitUsage = 2;

struct AbsoluteTarget {
  std::size_t pixels;
};
struct ScaleTarget {
  double factor;
};

struct RunConfig {
  std::filesystem::path input;
  /// Empty runs every strategy.
  std::optional<Strategy> strategy;
  ResizeAxis axis = ResizeAxis::horizontal;
  std::variant<AbsoluteTarget, ScaleTarget> target = ScaleTarget{1.0};
  std::filesystem::path output;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> energy_map_dir;
  FusionConfig fusion;
};

/// Output file for one strategy of an "all" run: out.png -> out_<id>.png.
std::filesystem::path suffixed_output(const std::filesystem::path& output, Strategy strategy);

/// Executes a parsed configuration. Returns kExitUsage when the target does
/// not form a valid plan for the loaded stack, kExitProcessing on any other
/// failure; diagnostics go to stderr.
int run(const RunConfig& cfg);

/// Parses argv and runs. Honors HDRRT_THREADS as read at call time.
int run_cli(int argc, const char* const* argv);

}  // namespace hdrrt::cli
