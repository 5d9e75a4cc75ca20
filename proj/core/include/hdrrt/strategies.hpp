#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hdrrt/fusion.hpp"
#include "hdrrt/grid.hpp"
#include "hdrrt/seam.hpp"
#include "hdrrt/stack_io.hpp"

namespace hdrrt {

enum class Strategy { direct, stat_min, stat_median, stat_total, agg_avg, agg_laplacian };

inline constexpr std::array<Strategy, 6> kAllStrategies = {
    Strategy::direct, Strategy::stat_min, Strategy::stat_median,
    Strategy::stat_total, Strategy::agg_avg, Strategy::agg_laplacian};

/// "direct", "stat-min", "stat-median", "stat-total", "agg-avg", "agg-laplacian".
std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view id) noexcept;

/// horizontal changes the width (vertical seams); vertical changes the
/// height (horizontal seams, carved on the transposed stack).
enum class ResizeAxis { horizontal, vertical };
enum class Direction { reduce, enlarge };

std::string_view to_string(ResizeAxis a) noexcept;
std::optional<ResizeAxis> parse_axis(std::string_view id) noexcept;

class RetargetPlan {
 public:
  /// current_size and target_size are measured along the axis. Throws
  /// InvalidArgument when a reduction targets fewer than 2 pixels and
  /// TooManySeams when an enlargement needs as many seams as the current
  /// size or more.
  RetargetPlan(Strategy strategy, ResizeAxis axis, std::size_t current_size, std::size_t target_size);

  /// target = round(scale * size along axis).
  static RetargetPlan from_scale(Strategy strategy, ResizeAxis axis, std::size_t width,
                                 std::size_t height, double scale);

  Strategy strategy() const noexcept { return strategy_; }
  ResizeAxis axis() const noexcept { return axis_; }
  std::size_t current_size() const noexcept { return current_; }
  std::size_t target_size() const noexcept { return target_; }
  std::size_t seam_count() const noexcept { return current_ > target_ ? current_ - target_ : target_ - current_; }
  Direction direction() const noexcept { return target_ < current_ ? Direction::reduce : Direction::enlarge; }

  RetargetPlan with_strategy(Strategy s) const { return {s, axis_, current_, target_}; }

 private:
  Strategy strategy_;
  ResizeAxis axis_;
  std::size_t current_;
  std::size_t target_;
};

struct TraceStep {
  std::size_t step = 0;
  /// Image whose own minimal seam was applied; empty when the seam came
  /// from a fused or aggregate map.
  std::optional<std::size_t> source;
  /// Energy of the seam under the strategy's selection measure: the
  /// replica total for stat-total, the seam's own energy otherwise.
  double seam_energy = 0.0;
  /// Average per-pixel carving energy after the step (fused image energy
  /// for direct, mean of per-image energies for stat-*, aggregate map for
  /// agg-*).
  double avg_energy = 0.0;
  /// Average gradient energy of the fused preview after the
  /// step, when requested through RetargetOptions.
  std::optional<double> fused_avg_energy;
};

struct StrategyTrace {
  Strategy strategy = Strategy::direct;
  std::size_t seam_count = 0;
  /// Carving-energy average before the first step.
  double initial_avg_energy = 0.0;
  std::optional<double> initial_fused_avg_energy;
  std::vector<TraceStep> steps;
  double fusion_overshoot = 0.0;
};

struct RetargetOptions {
  /// Fuse the working stack after every step and record its energy.
  bool record_fused_curve = false;
};

struct RetargetResult {
  RgbImage image;
  /// Stack right before the final fusion (for direct: the single carved
  /// fused image).
  ImageStack carved;
  StrategyTrace trace;
  /// Enlargement seams in input coordinates, in planning order.
  std::vector<Seam> planned_seams;
};

/// argmin of seam energies, lowest index on ties. Throws EmptyInput.
std::size_t select_seam_min(std::span<const Seam> seams);
/// Index of the lower median (ceil(N/2)-th smallest), lowest index among
/// equal energies. Throws EmptyInput.
std::size_t select_seam_median(std::span<const Seam> seams);
/// totals[j] = sum over i of seam_energy_in(seams[j], energies[i]).
std::vector<double> replica_seam_totals(std::span<const Seam> seams, std::span<const EnergyMap> energies);
/// argmin of replica_seam_totals, lowest index on ties.
std::size_t select_seam_total_min(std::span<const Seam> seams, std::span<const EnergyMap> energies);

/// Result of evaluating one carving step on the current working images.
struct StepEvaluation {
  Seam seam;
  std::optional<std::size_t> source;
  double seam_energy = 0.0;
  double average_energy = 0.0;
  /// The single map the seam was found in (direct and agg-*).
  std::optional<EnergyMap> combined_energy;
};

/// Energies and seam choice for one step of the given strategy. For
/// direct the span must hold exactly the fused working image.
StepEvaluation evaluate_step(Strategy strategy, std::span<const RgbImage> images);

using SeamPicker = std::function<StepEvaluation(std::span<const RgbImage>)>;
SeamPicker make_seam_picker(Strategy strategy);

/// Finds k seams by successive removal on a working copy and maps each
/// back to input coordinates. The result is pairwise disjoint in every
/// row; seams need not stay 8-connected after remapping. Throws
/// TooManySeams unless k < width.
std::vector<Seam> plan_insertion_seams(std::span<const RgbImage> images, const SeamPicker& pick, std::size_t k);

enum class StatSelector { min, median, total };
enum class AggWeighting { avg_energy, laplacian };

RetargetResult retarget_direct(const ImageStack& stack, const RetargetPlan& plan, const FusionConfig& fusion,
                               const RetargetOptions& options = {});
RetargetResult retarget_statistical(const ImageStack& stack, const RetargetPlan& plan, StatSelector selector,
                                    const FusionConfig& fusion, const RetargetOptions& options = {});
RetargetResult retarget_aggregate(const ImageStack& stack, const RetargetPlan& plan, AggWeighting weighting,
                                  const FusionConfig& fusion, const RetargetOptions& options = {});
/// Dispatches on plan.strategy().
RetargetResult retarget(const ImageStack& stack, const RetargetPlan& plan, const FusionConfig& fusion,
                        const RetargetOptions& options = {});

}  // namespace hdrrt
