#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hdrrt/report.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"

using namespace hdrrt;
using namespace hdrrt::testing;
namespace fs = std::filesystem;

namespace {

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hdrrt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

void write_stack(const ImageStack& stack, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < stack.size(); ++i) save_image(stack[i], dir / ("exp" + std::to_string(i) + ".png"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("single strategy run produces the target width") {
  TempDir dir;
  write_stack(make_bracketed_scene(100, 30, 1), dir / "in");
  CHECK(invoke({"--input", (dir / "in").string(), "--strategy", "agg-laplacian", "--scale", "0.7", "--axis",
                "horizontal", "--output", (dir / "out.png").string(), "--report", (dir / "r.csv").string()}) == 0);
  const RgbImage out = load_image(dir / "out.png");
  CHECK(out.width() == 70);
  CHECK(out.height() == 30);
  const ParsedCurveReport report = parse_energy_curve_report(slurp(dir / "r.csv"));
  CHECK(report.steps.size() == 30);
  CHECK(report.finals.size() == 1);
}

TEST_CASE("vertical axis with absolute target and energy maps") {
  TempDir dir;
  write_stack(make_bracketed_scene(20, 16, 2), dir / "in");
  CHECK(invoke({"--input", (dir / "in").string(), "--strategy", "stat-total", "--target", "20", "--axis",
                "vertical", "--output", (dir / "tall.png").string(), "--emit-energy-maps",
                (dir / "maps").string(), "--fusion-sigma", "0.25", "--fusion-exponents", "1,0.5,1"}) == 0);
  const RgbImage out = load_image(dir / "tall.png");
  CHECK(out.width() == 20);
  CHECK(out.height() == 20);
  CHECK(fs::exists(dir / "maps/input_0_exp0.png"));
  CHECK(fs::exists(dir / "maps/stat-total_final.png"));
}

TEST_CASE("all strategies: six outputs, one report, same as individual runs") {
  TempDir dir;
  write_stack(make_bracketed_scene(30, 20, 3), dir / "in");
  CHECK(invoke({"--input", (dir / "in").string(), "--strategy", "all", "--scale", "0.8", "--output",
                (dir / "out.png").string(), "--report", (dir / "all.csv").string()}) == 0);
  const ParsedCurveReport report = parse_energy_curve_report(slurp(dir / "all.csv"));
  CHECK(report.finals.size() == 6);
  CHECK(report.steps.size() == 6 * 6);
  for (Strategy s : kAllStrategies) {
    const fs::path combined = cli::suffixed_output(dir / "out.png", s);
    REQUIRE(fs::exists(combined));
    const fs::path alone = dir / ("alone_" + std::string(to_string(s)) + ".png");
    CHECK(invoke({"--input", (dir / "in").string(), "--strategy", std::string(to_string(s)), "--scale", "0.8",
                  "--output", alone.string()}) == 0);
    CHECK(slurp(combined) == slurp(alone));
  }
}

TEST_CASE("manifest input") {
  TempDir dir;
  write_stack(make_bracketed_scene(12, 10, 4), dir / "in");
  std::ofstream(dir / "list.txt") << "# darkest first\nin/exp0.png\nin/exp2.png\n";
  CHECK(invoke({"--input", (dir / "list.txt").string(), "--strategy", "direct", "--scale", "1.5", "--output",
                (dir / "wide.png").string()}) == 0);
  CHECK(load_image(dir / "wide.png").width() == 18);
}

TEST_CASE("exit codes") {
  TempDir dir;
  write_stack(make_bracketed_scene(12, 10, 5), dir / "in");
  const std::string in = (dir / "in").string();
  const std::string out = (dir / "o.png").string();

  SUBCASE("usage errors") {
    CHECK(invoke({"--input", in, "--scale", "0", "--output", out}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "2", "--output", out}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--target", "5", "--output", out}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--output", out}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out, "--strategy", "median"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out, "--axis", "diagonal"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out, "--bogus"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out, "--fusion-exponents", "1,1"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out, "--fusion-sigma", "-1"}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--target", "1", "--output", out}) == cli::kExitUsage);
    CHECK(invoke({"--input", in, "--target", "40", "--output", out}) == cli::kExitUsage);
  }
  SUBCASE("processing errors") {
    CHECK(invoke({"--input", (dir / "missing").string(), "--scale", "0.5", "--output", out}) == cli::kExitProcessing);
    save_image(RgbImage(12, 9), dir / "in/exp9.png");
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", out}) == cli::kExitProcessing);
    fs::remove(dir / "in/exp9.png");
    CHECK(invoke({"--input", in, "--scale", "0.5", "--output", (dir / "nodir/o.png").string()}) ==
          cli::kExitProcessing);
  }
  SUBCASE("help") { CHECK(invoke({"--help"}) == 0); }
}
