#include "hdrrt/report.hpp"

#include <algorithm>
#include <charconv>
#include <system_error>

#include "hdrrt/energy.hpp"
#include "hdrrt/errors.hpp"
#include "hdrrt/stack_io.hpp"

namespace hdrrt {
namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void append_number(std::string& out, std::size_t v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

template <class T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

EnergyCurve to_energy_curve(const StrategyTrace& trace) {
  EnergyCurve curve;
  curve.strategy = std::string(to_string(trace.strategy));
  curve.points.reserve(trace.steps.size() + 1);
  curve.points.emplace_back(0, trace.initial_avg_energy);
  for (const auto& s : trace.steps) curve.points.emplace_back(s.step, s.avg_energy);
  return curve;
}

std::string energy_curve_report(std::span<const StrategyTrace> traces, std::span<const RgbImage> finals) {
  if (traces.size() != finals.size()) {
    throw Error(ErrorCode::InconsistentTraces, std::to_string(traces.size()) + " traces but " +
                                                   std::to_string(finals.size()) + " final images");
  }
  for (const auto& t : traces) {
    if (t.seam_count != traces.front().seam_count) {
      throw Error(ErrorCode::InconsistentTraces, "traces were produced by plans with different seam counts");
    }
    if (t.steps.size() != t.seam_count) {
      throw Error(ErrorCode::InconsistentTraces, std::string(to_string(t.strategy)) + " trace has " +
                                                     std::to_string(t.steps.size()) + " steps, expected " +
                                                     std::to_string(t.seam_count));
    }
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      if (t.steps[i].step != i + 1) {
        throw Error(ErrorCode::InconsistentTraces, std::string(to_string(t.strategy)) + " trace steps are not contiguous");
      }
    }
  }

  std::string out(kCurveCsvHeader);
  out += '\n';
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const std::string_view id = to_string(traces[k].strategy);
    for (const auto& s : traces[k].steps) {
      out.append(id);
      out += ',';
      append_number(out, s.step);
      out += ',';
      append_number(out, s.avg_energy);
      out += '\n';
    }
    out.append(id);
    out += ",final,";
    append_number(out, average_energy_per_pixel(image_energy(finals[k])));
    out += '\n';
  }
  return out;
}

ParsedCurveReport parse_energy_curve_report(std::string_view csv) {
  ParsedCurveReport report;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    std::string_view line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCurveCsvHeader) throw Error(ErrorCode::InvalidArgument, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": expected three fields");
    }
    const std::string strategy(line.substr(0, c1));
    const std::string_view middle = line.substr(c1 + 1, c2 - c1 - 1);
    const double value = parse_field<double>(line.substr(c2 + 1), line_no);
    if (middle == "final") {
      report.finals.emplace_back(strategy, value);
    } else {
      report.steps.push_back({strategy, parse_field<std::size_t>(middle, line_no), value});
    }
  }
  if (!header_seen) throw Error(ErrorCode::InvalidArgument, "empty report");
  return report;
}

void render_energy_visualization(const EnergyMap& e, const std::filesystem::path& path) {
  if (e.empty()) throw Error(ErrorCode::EmptyInput, "cannot render an empty energy map");
  const auto v = e.values();
  const double max = *std::max_element(v.begin(), v.end());
  Plane scaled(e.width(), e.height());
  auto dst = scaled.values();
  if (max > 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) dst[i] = v[i] / max;
  }
  save_gray(scaled, path);
}

}  // namespace hdrrt
