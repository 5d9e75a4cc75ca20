#include "hdrrt/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hdrrt/energy.hpp"
#include "hdrrt/errors.hpp"
#include "hdrrt/parallel.hpp"

namespace hdrrt {
namespace {

bool is_statistical(Strategy s) {
  return s == Strategy::stat_min || s == Strategy::stat_median || s == Strategy::stat_total;
}

std::vector<EnergyMap> per_image_energies(std::span<const RgbImage> images) {
  std::vector<EnergyMap> energies(images.size());
  parallel_for(images.size(), [&](std::size_t i) { energies[i] = image_energy(images[i]); });
  return energies;
}

double mean_average_energy(std::span<const EnergyMap> energies) {
  double sum = 0.0;
  for (const auto& e : energies) sum += average_energy_per_pixel(e);
  return sum / static_cast<double>(energies.size());
}

StepEvaluation evaluate_combined(EnergyMap map) {
  StepEvaluation ev;
  ev.seam = find_min_seam(map);
  ev.seam_energy = ev.seam.energy;
  ev.average_energy = average_energy_per_pixel(map);
  ev.combined_energy = std::move(map);
  return ev;
}

StepEvaluation evaluate_statistical(Strategy strategy, std::span<const RgbImage> images) {
  const std::vector<EnergyMap> energies = per_image_energies(images);
  std::vector<Seam> seams(images.size());
  parallel_for(images.size(), [&](std::size_t i) { seams[i] = find_min_seam(energies[i]); });

  StepEvaluation ev;
  std::size_t k = 0;
  if (strategy == Strategy::stat_min) {
    k = select_seam_min(seams);
    ev.seam_energy = seams[k].energy;
  } else if (strategy == Strategy::stat_median) {
    k = select_seam_median(seams);
    ev.seam_energy = seams[k].energy;
  } else {
    const std::vector<double> totals = replica_seam_totals(seams, energies);
    k = static_cast<std::size_t>(std::min_element(totals.begin(), totals.end()) - totals.begin());
    ev.seam_energy = totals[k];
  }
  ev.seam = std::move(seams[k]);
  ev.source = k;
  ev.average_energy = mean_average_energy(energies);
  return ev;
}

StepEvaluation evaluate_aggregate(Strategy strategy, std::span<const RgbImage> images) {
  std::vector<EnergyMap> energies(images.size());
  std::vector<EnergyMap> laplacians(strategy == Strategy::agg_laplacian ? images.size() : 0);
  parallel_for(images.size(), [&](std::size_t i) {
    const LuminanceImage lum = to_luminance(images[i]);
    energies[i] = gradient_energy(lum);
    // abs_laplacian shares laplacian_map's stencil but tolerates the
    // two-pixel widths a deep reduction can reach.
    if (!laplacians.empty()) laplacians[i] = retag<EnergyMap>(abs_laplacian(lum));
  });
  EnergyMap aggregate = strategy == Strategy::agg_avg
                            ? aggregate_energy_weighted(energies, weights_from_average_energy(energies))
                            : aggregate_energy_laplacian(energies, laplacians);
  return evaluate_combined(std::move(aggregate));
}

// Counts already-inserted input columns left of a given one, per row.
class InsertedColumns {
 public:
  InsertedColumns(std::size_t width, std::size_t height) : width_(width), tree_(height, std::vector<std::size_t>(width + 1, 0)) {}

  std::size_t count_below(std::size_t row, std::size_t col) const {
    std::size_t sum = 0;
    for (std::size_t i = col; i > 0; i -= i & (~i + 1)) sum += tree_[row][i];
    return sum;
  }

  void add(std::size_t row, std::size_t col) {
    for (std::size_t i = col + 1; i <= width_; i += i & (~i + 1)) ++tree_[row][i];
  }

 private:
  std::size_t width_;
  std::vector<std::vector<std::size_t>> tree_;
};

void apply_to_all(std::vector<RgbImage>& images, const Seam& seam, bool insert) {
  parallel_for(images.size(), [&](std::size_t i) {
    images[i] = insert ? insert_seam(images[i], seam) : remove_seam(images[i], seam);
  });
}

std::vector<RgbImage> transpose_all(std::vector<RgbImage> images) {
  for (auto& img : images) img = transpose(img);
  return images;
}

double fused_energy(const std::vector<RgbImage>& images, Strategy strategy, const FusionConfig& fusion) {
  if (strategy == Strategy::direct) return average_energy_per_pixel(image_energy(images.front()));
  return average_energy_per_pixel(image_energy(fuse_stack(ImageStack(images), fusion)));
}

struct CarveOutput {
  std::vector<RgbImage> images;
  StrategyTrace trace;
  std::vector<Seam> planned;
};

// Carves or inserts plan.seam_count() vertical seams into images, which are
// already in the orientation the seams run in.
CarveOutput carve(std::vector<RgbImage> images, const RetargetPlan& plan, const FusionConfig& fusion,
                  const RetargetOptions& options) {
  const Strategy strategy = plan.strategy();
  const SeamPicker pick = make_seam_picker(strategy);
  const std::size_t count = plan.seam_count();
  const SeamOrientation orientation =
      plan.axis() == ResizeAxis::horizontal ? SeamOrientation::vertical : SeamOrientation::horizontal;

  CarveOutput out;
  out.trace.strategy = strategy;
  out.trace.seam_count = count;
  out.trace.steps.reserve(count);

  auto record = [&](std::size_t step, const StepEvaluation& chosen, double avg_after,
                    const std::vector<RgbImage>& now) {
    TraceStep t;
    t.step = step;
    t.source = chosen.source;
    t.seam_energy = chosen.seam_energy;
    t.avg_energy = avg_after;
    if (options.record_fused_curve) t.fused_avg_energy = fused_energy(now, strategy, fusion);
    out.trace.steps.push_back(t);
  };

  StepEvaluation first = pick(images);
  out.trace.initial_avg_energy = first.average_energy;
  if (options.record_fused_curve) out.trace.initial_fused_avg_energy = fused_energy(images, strategy, fusion);

  if (plan.direction() == Direction::reduce) {
    // The evaluation after step k doubles as the seam choice for step k+1.
    std::optional<StepEvaluation> current = std::move(first);
    for (std::size_t step = 1; step <= count; ++step) {
      apply_to_all(images, current->seam, false);
      StepEvaluation next = pick(images);
      record(step, *current, next.average_energy, images);
      current = std::move(next);
    }
  } else if (count > 0) {
    std::vector<StepEvaluation> picks;
    out.planned = plan_insertion_seams(images, [&](std::span<const RgbImage> working) {
      picks.push_back(pick(working));
      return picks.back();
    }, count);

    const std::size_t height = images.front().height();
    InsertedColumns inserted(images.front().width(), height);
    for (std::size_t step = 1; step <= count; ++step) {
      const Seam& original = out.planned[step - 1];
      Seam shifted = original;
      for (std::size_t r = 0; r < height; ++r) {
        shifted.columns[r] = original.columns[r] + inserted.count_below(r, original.columns[r]);
        inserted.add(r, original.columns[r]);
      }
      apply_to_all(images, shifted, true);
      record(step, picks[step - 1], pick(images).average_energy, images);
    }
  }
  for (auto& s : out.planned) s.orientation = orientation;
  out.images = std::move(images);
  return out;
}

RetargetResult finish(CarveOutput carved, const ImageStack& source, const RetargetPlan& plan,
                      const FusionConfig& fusion) {
  std::vector<RgbImage> images = std::move(carved.images);
  if (plan.axis() == ResizeAxis::vertical) images = transpose_all(std::move(images));
  std::vector<std::string> labels;
  if (images.size() == source.size()) labels = source.labels();
  ImageStack stack(std::move(images), std::move(labels));
  FusionResult fused = plan.strategy() == Strategy::direct ? FusionResult{stack[0], 0.0}
                                                           : fuse_stack_detailed(stack, fusion);
  if (plan.strategy() != Strategy::direct) carved.trace.fusion_overshoot = fused.overshoot;
  return RetargetResult{std::move(fused.image), std::move(stack), std::move(carved.trace),
                        std::move(carved.planned)};
}

void check_plan_matches(const ImageStack& stack, const RetargetPlan& plan) {
  const std::size_t size = plan.axis() == ResizeAxis::horizontal ? stack.width() : stack.height();
  if (size != plan.current_size()) {
    throw Error(ErrorCode::DimensionMismatch, "plan was made for size " + std::to_string(plan.current_size()) +
                                                  ", stack has " + std::to_string(size));
  }
}

std::vector<RgbImage> oriented(std::vector<RgbImage> images, ResizeAxis axis) {
  return axis == ResizeAxis::vertical ? transpose_all(std::move(images)) : images;
}

RetargetResult run_stack_strategy(const ImageStack& stack, const RetargetPlan& plan, const FusionConfig& fusion,
                                  const RetargetOptions& options) {
  check_plan_matches(stack, plan);
  fusion.validate();
  CarveOutput carved = carve(oriented(stack.images(), plan.axis()), plan, fusion, options);
  return finish(std::move(carved), stack, plan, fusion);
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::direct: return "direct";
    case Strategy::stat_min: return "stat-min";
    case Strategy::stat_median: return "stat-median";
    case Strategy::stat_total: return "stat-total";
    case Strategy::agg_avg: return "agg-avg";
    case Strategy::agg_laplacian: return "agg-laplacian";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view id) noexcept {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == id) return s;
  }
  return std::nullopt;
}

std::string_view to_string(ResizeAxis a) noexcept {
  return a == ResizeAxis::horizontal ? "horizontal" : "vertical";
}

std::optional<ResizeAxis> parse_axis(std::string_view id) noexcept {
  if (id == "horizontal") return ResizeAxis::horizontal;
  if (id == "vertical") return ResizeAxis::vertical;
  return std::nullopt;
}

RetargetPlan::RetargetPlan(Strategy strategy, ResizeAxis axis, std::size_t current_size, std::size_t target_size)
    : strategy_(strategy), axis_(axis), current_(current_size), target_(target_size) {
  if (target_ < current_ && target_ < 2) {
    throw Error(ErrorCode::InvalidArgument, "reduction target must be at least 2 pixels");
  }
  if (target_ > current_ && target_ - current_ >= current_) {
    throw Error(ErrorCode::TooManySeams, "enlarging " + std::to_string(current_) + " to " +
                                             std::to_string(target_) + " needs more seams than pixels");
  }
}

RetargetPlan RetargetPlan::from_scale(Strategy strategy, ResizeAxis axis, std::size_t width, std::size_t height,
                                      double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  const std::size_t current = axis == ResizeAxis::horizontal ? width : height;
  const auto target = static_cast<std::size_t>(std::llround(scale * static_cast<double>(current)));
  return RetargetPlan(strategy, axis, current, target);
}

std::size_t select_seam_min(std::span<const Seam> seams) {
  if (seams.empty()) throw Error(ErrorCode::EmptyInput, "no seams to select from");
  std::size_t best = 0;
  for (std::size_t j = 1; j < seams.size(); ++j) {
    if (seams[j].energy < seams[best].energy) best = j;
  }
  return best;
}

std::size_t select_seam_median(std::span<const Seam> seams) {
  if (seams.empty()) throw Error(ErrorCode::EmptyInput, "no seams to select from");
  std::vector<std::size_t> order(seams.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seams[a].energy < seams[b].energy; });
  const double median = seams[order[(seams.size() + 1) / 2 - 1]].energy;
  for (std::size_t i = 0;; ++i)
    if (seams[i].energy == median) return i;
}

std::vector<double> replica_seam_totals(std::span<const Seam> seams, std::span<const EnergyMap> energies) {
  if (seams.empty()) throw Error(ErrorCode::EmptyInput, "no seams to select from");
  if (seams.size() != energies.size()) {
    throw Error(ErrorCode::LengthMismatch, "seam count differs from energy map count");
  }
  std::vector<double> totals(seams.size(), 0.0);
  for (std::size_t j = 0; j < seams.size(); ++j) {
    for (std::size_t i = 0; i < energies.size(); ++i) totals[j] += seam_energy_in(seams[j], energies[i]);
  }
  return totals;
}

std::size_t select_seam_total_min(std::span<const Seam> seams, std::span<const EnergyMap> energies) {
  const std::vector<double> totals = replica_seam_totals(seams, energies);
  return static_cast<std::size_t>(std::min_element(totals.begin(), totals.end()) - totals.begin());
}

StepEvaluation evaluate_step(Strategy strategy, std::span<const RgbImage> images) {
  if (images.empty()) throw Error(ErrorCode::EmptyInput, "no images to evaluate");
  if (strategy == Strategy::direct) {
    if (images.size() != 1) throw Error(ErrorCode::InvalidArgument, "direct carving works on one fused image");
    return evaluate_combined(image_energy(images.front()));
  }
  if (is_statistical(strategy)) return evaluate_statistical(strategy, images);
  return evaluate_aggregate(strategy, images);
}

SeamPicker make_seam_picker(Strategy strategy) {
  return [strategy](std::span<const RgbImage> images) { return evaluate_step(strategy, images); };
}

std::vector<Seam> plan_insertion_seams(std::span<const RgbImage> images, const SeamPicker& pick, std::size_t k) {
  if (images.empty()) throw Error(ErrorCode::EmptyInput, "no images to plan seams in");
  const std::size_t width = images.front().width();
  const std::size_t height = images.front().height();
  if (k >= width) {
    throw Error(ErrorCode::TooManySeams, std::to_string(k) + " insertion seams requested for width " +
                                             std::to_string(width));
  }
  std::vector<Seam> planned;
  planned.reserve(k);
  if (k == 0) return planned;

  // index_map[r][c]: input column of working pixel (r, c).
  std::vector<std::vector<std::size_t>> index_map(height, std::vector<std::size_t>(width));
  for (auto& row : index_map) std::iota(row.begin(), row.end(), 0);

  std::vector<RgbImage> working(images.begin(), images.end());
  for (std::size_t j = 0; j < k; ++j) {
    StepEvaluation ev = pick(working);
    Seam original = ev.seam;
    for (std::size_t r = 0; r < height; ++r) {
      auto& row = index_map[r];
      original.columns[r] = row[ev.seam.columns[r]];
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(ev.seam.columns[r]));
    }
    planned.push_back(std::move(original));
    if (j + 1 < k) apply_to_all(working, ev.seam, false);
  }
  return planned;
}

RetargetResult retarget_direct(const ImageStack& stack, const RetargetPlan& plan, const FusionConfig& fusion,
                               const RetargetOptions& options) {
  if (plan.strategy() != Strategy::direct) {
    throw Error(ErrorCode::InvalidArgument, "plan strategy is " + std::string(to_string(plan.strategy())));
  }
  check_plan_matches(stack, plan);
  FusionResult fused = fuse_stack_detailed(stack, fusion);
  std::vector<RgbImage> single{std::move(fused.image)};
  CarveOutput carved = carve(oriented(std::move(single), plan.axis()), plan, fusion, options);
  carved.trace.fusion_overshoot = fused.overshoot;
  return finish(std::move(carved), stack, plan, fusion);
}

RetargetResult retarget_statistical(const ImageStack& stack, const RetargetPlan& plan, StatSelector selector,
                                    const FusionConfig& fusion, const RetargetOptions& options) {
  const Strategy expected = selector == StatSelector::min      ? Strategy::stat_min
                            : selector == StatSelector::median ? Strategy::stat_median
                                                               : Strategy::stat_total;
  if (plan.strategy() != expected) {
    throw Error(ErrorCode::InvalidArgument, "plan strategy is " + std::string(to_string(plan.strategy())) +
                                                ", selector implies " + std::string(to_string(expected)));
  }
  return run_stack_strategy(stack, plan, fusion, options);
}

RetargetResult retarget_aggregate(const ImageStack& stack, const RetargetPlan& plan, AggWeighting weighting,
                                  const FusionConfig& fusion, const RetargetOptions& options) {
  const Strategy expected = weighting == AggWeighting::avg_energy ? Strategy::agg_avg : Strategy::agg_laplacian;
  if (plan.strategy() != expected) {
    throw Error(ErrorCode::InvalidArgument, "plan strategy is " + std::string(to_string(plan.strategy())) +
                                                ", weighting implies " + std::string(to_string(expected)));
  }
  return run_stack_strategy(stack, plan, fusion, options);
}

RetargetResult retarget(const ImageStack& stack, const RetargetPlan& plan, const FusionConfig& fusion,
                        const RetargetOptions& options) {
  switch (plan.strategy()) {
    case Strategy::direct: return retarget_direct(stack, plan, fusion, options);
    case Strategy::stat_min: return retarget_statistical(stack, plan, StatSelector::min, fusion, options);
    case Strategy::stat_median: return retarget_statistical(stack, plan, StatSelector::median, fusion, options);
    case Strategy::stat_total: return retarget_statistical(stack, plan, StatSelector::total, fusion, options);
    case Strategy::agg_avg: return retarget_aggregate(stack, plan, AggWeighting::avg_energy, fusion, options);
    case Strategy::agg_laplacian: return retarget_aggregate(stack, plan, AggWeighting::laplacian, fusion, options);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy");
}

}  // namespace hdrrt
