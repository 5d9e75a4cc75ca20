#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdrrt/grid.hpp"
#include "hdrrt/strategies.hpp"

namespace hdrrt {

inline constexpr std::string_view kCurveCsvHeader = "strategy,seams_processed,avg_energy_per_pixel";

/// (seams processed, average energy per pixel) samples, starting at 0.
struct EnergyCurve {
  std::string strategy;
  std::vector<std::pair<std::size_t, double>> points;
};

EnergyCurve to_energy_curve(const StrategyTrace& trace);

/// CSV with kCurveCsvHeader, one row per trace step, and per strategy a
/// summary row "<strategy>,final,<value>" holding the average gradient
/// energy of the corresponding final image. Numbers use the shortest
/// representation that round-trips. Throws InconsistentTraces when the
/// traces disagree on seam count, have missing or out-of-order steps, or
/// do not pair up with finals.
std::string energy_curve_report(std::span<const StrategyTrace> traces, std::span<const RgbImage> finals);

struct ParsedCurveReport {
  struct Row {
    std::string strategy;
    std::size_t seams_processed = 0;
    double avg_energy = 0.0;
  };
  std::vector<Row> steps;
  std::vector<std::pair<std::string, double>> finals;
};

/// Reads a document produced by energy_curve_report. Throws InvalidArgument
/// on malformed input.
ParsedCurveReport parse_energy_curve_report(std::string_view csv);

/// Grayscale PNG, linearly scaled so the map maximum becomes 255. An
/// all-zero map is written black.
void render_energy_visualization(const EnergyMap& e, const std::filesystem::path& path);

}  // namespace hdrrt
