#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hdrrt/energy.hpp"
#include "hdrrt/errors.hpp"
#include "hdrrt/parallel.hpp"
#include "hdrrt/report.hpp"
#include "hdrrt/stack_io.hpp"

namespace fs = std::filesystem;

namespace hdrrt::cli {
namespace {

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, int exit_code)
      : std::runtime_error(what), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

template <class F>
auto in_stage(const std::string& stage, F&& f, int exit_code = kExitProcessing) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what(), exit_code);
  }
}

void log_info(const std::string& stage, const std::string& fields) {
  std::cerr << "hdrrt: level=info stage=" << stage << ' ' << fields << '\n';
}

RetargetPlan make_plan(const RunConfig& cfg, Strategy strategy, const ImageStack& stack) {
  if (const auto* scale = std::get_if<ScaleTarget>(&cfg.target)) {
    return RetargetPlan::from_scale(strategy, cfg.axis, stack.width(), stack.height(), scale->factor);
  }
  const std::size_t current = cfg.axis == ResizeAxis::horizontal ? stack.width() : stack.height();
  return RetargetPlan(strategy, cfg.axis, current, std::get<AbsoluteTarget>(cfg.target).pixels);
}

std::string energy_map_name(std::size_t index, const std::string& label) {
  return "input_" + std::to_string(index) + "_" + fs::path(label).stem().string() + ".png";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<double> parse_exponents(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--fusion-exponents", "bad number '" + item + "'");
    values.push_back(v);
  }
  if (values.size() != 3) throw CLI::ValidationError("--fusion-exponents", "expected three values c,s,w");
  return values;
}

}  // namespace

fs::path suffixed_output(const fs::path& output, Strategy strategy) {
  fs::path out = output;
  out.replace_filename(output.stem().string() + "_" + std::string(to_string(strategy)) +
                       output.extension().string());
  return out;
}

int run(const RunConfig& cfg) {
  try {
    const ImageStack stack = in_stage("load", [&] { return load_stack(cfg.input); });
    log_info("load", "images=" + std::to_string(stack.size()) + " width=" + std::to_string(stack.width()) +
                         " height=" + std::to_string(stack.height()));

    std::vector<Strategy> strategies;
    if (cfg.strategy) strategies.push_back(*cfg.strategy);
    else strategies.assign(kAllStrategies.begin(), kAllStrategies.end());

    std::vector<RetargetPlan> plans = in_stage("plan", [&] {
      cfg.fusion.validate();
      std::vector<RetargetPlan> out;
      for (Strategy s : strategies) out.push_back(make_plan(cfg, s, stack));
      return out;
    }, kExitUsage);
    log_info("plan", "axis=" + std::string(to_string(cfg.axis)) + " from=" +
                         std::to_string(plans.front().current_size()) +
                         " to=" + std::to_string(plans.front().target_size()) +
                         " seams=" + std::to_string(plans.front().seam_count()));

    if (cfg.energy_map_dir) {
      in_stage("energy-maps", [&] {
        fs::create_directories(*cfg.energy_map_dir);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          render_energy_visualization(image_energy(stack[i]),
                                      *cfg.energy_map_dir / energy_map_name(i, stack.labels()[i]));
        }
        return 0;
      });
    }

    // Strategies are independent: each writes only its own slot.
    std::vector<std::optional<RetargetResult>> results(strategies.size());
    std::vector<std::string> failures(strategies.size());
    parallel_for(strategies.size(), [&](std::size_t k) {
      try {
        results[k] = retarget(stack, plans[k], cfg.fusion);
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    });
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      if (!failures[k].empty()) {
        throw StageError("retarget:" + std::string(to_string(strategies[k])), failures[k], kExitProcessing);
      }
    }

    std::vector<StrategyTrace> traces;
    std::vector<RgbImage> finals;
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      const fs::path out = cfg.strategy ? cfg.output : suffixed_output(cfg.output, strategies[k]);
      in_stage("write", [&] {
        save_image(results[k]->image, out);
        if (cfg.energy_map_dir) {
          render_energy_visualization(image_energy(results[k]->image),
                                      *cfg.energy_map_dir / (std::string(to_string(strategies[k])) + "_final.png"));
        }
        return 0;
      });
      log_info("write", "strategy=" + std::string(to_string(strategies[k])) + " path=" + out.string() +
                            " width=" + std::to_string(results[k]->image.width()) +
                            " height=" + std::to_string(results[k]->image.height()));
      traces.push_back(results[k]->trace);
      finals.push_back(results[k]->image);
    }

    if (cfg.report) {
      in_stage("report", [&] {
        write_text(*cfg.report, energy_curve_report(traces, finals));
        return 0;
      });
      log_info("report", "path=" + cfg.report->string());
    }
    return kExitOk;
  } catch (const StageError& e) {
    std::cerr << "hdrrt: level=error stage=" << e.stage() << " message=\"" << e.what() << "\"\n";
    return e.exit_code();
  }
}

int run_cli(int argc, const char* const* argv) {
  reload_thread_limit_from_env();

  CLI::App app{"Content-aware retargeting of multi-exposure stacks with exposure fusion", "hdrrt"};
  RunConfig cfg;
  std::string input;
  std::string strategy = "agg-laplacian";
  std::string axis = "horizontal";
  std::string output;
  std::string report;
  std::string energy_dir;
  std::string exponents;
  double scale = 0.0;
  std::size_t target = 0;
  double sigma = cfg.fusion.wellexposed_sigma;
  std::size_t levels = 0;

  app.add_option("--input", input, "Directory of .png/.jpg exposures or a manifest file")->required();
  app.add_option("--strategy", strategy,
                 "direct|stat-min|stat-median|stat-total|agg-avg|agg-laplacian|all")
      ->capture_default_str();
  app.add_option("--axis", axis, "horizontal (change width) or vertical (change height)")->capture_default_str();
  auto* scale_opt = app.add_option("--scale", scale, "Target size as a factor of the current size, in (0,2)");
  auto* target_opt = app.add_option("--target", target, "Target size in pixels along the axis");
  scale_opt->excludes(target_opt);
  target_opt->excludes(scale_opt);
  app.add_option("--output", output, "Output PNG (suffixed per strategy for 'all')")->required();
  app.add_option("--report", report, "Energy-curve CSV report");
  app.add_option("--emit-energy-maps", energy_dir, "Directory for grayscale energy-map PNGs");
  auto* sigma_opt = app.add_option("--fusion-sigma", sigma, "Well-exposedness sigma")->capture_default_str();
  auto* exp_opt = app.add_option("--fusion-exponents", exponents, "Quality exponents c,s,w");
  auto* levels_opt = app.add_option("--fusion-levels", levels, "Pyramid levels including the base");

  try {
    app.parse(argc, argv);

    if (scale_opt->count() == 0 && target_opt->count() == 0) {
      throw CLI::RequiredError("one of --scale or --target");
    }
    if (scale_opt->count() > 0) {
      if (!(scale > 0.0 && scale < 2.0)) throw CLI::ValidationError("--scale", "must lie in (0, 2)");
      cfg.target = ScaleTarget{scale};
    } else {
      cfg.target = AbsoluteTarget{target};
    }

    cfg.input = input;
    cfg.output = output;
    if (strategy != "all") {
      cfg.strategy = parse_strategy(strategy);
      if (!cfg.strategy) throw CLI::ValidationError("--strategy", "unknown strategy '" + strategy + "'");
    }
    const auto parsed_axis = parse_axis(axis);
    if (!parsed_axis) throw CLI::ValidationError("--axis", "must be horizontal or vertical");
    cfg.axis = *parsed_axis;
    if (!report.empty()) cfg.report = report;
    if (!energy_dir.empty()) cfg.energy_map_dir = energy_dir;

    if (sigma_opt->count() > 0) {
      if (!(sigma > 0.0)) throw CLI::ValidationError("--fusion-sigma", "must be positive");
      cfg.fusion.wellexposed_sigma = sigma;
    }
    if (exp_opt->count() > 0) {
      const auto e = parse_exponents(exponents);
      for (double v : e) {
        if (v < 0.0) throw CLI::ValidationError("--fusion-exponents", "must be nonnegative");
      }
      cfg.fusion.exponent_contrast = e[0];
      cfg.fusion.exponent_saturation = e[1];
      cfg.fusion.exponent_wellexposed = e[2];
    }
    if (levels_opt->count() > 0) {
      if (levels < 1) throw CLI::ValidationError("--fusion-levels", "must be at least 1");
      cfg.fusion.pyramid_levels = levels;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hdrrt: level=error stage=usage message=\"" << e.what() << "\"\n";
    return kExitUsage;
  }

  return run(cfg);
}

}  // namespace hdrrt::cli
