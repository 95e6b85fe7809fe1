#include "rctsim/svg_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr std::string_view kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double fraction(double v) const {
    const double t = log ? std::log10(v) : v;
    return (t - lo) / (hi - lo);
  }
};

std::size_t roster_position(std::string_view name) {
  const auto names = canonical_estimator_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

}  // namespace

StrokeStyle stroke_style(PropensityUse category) noexcept {
  switch (category) {
    case PropensityUse::TruePropensity: return StrokeStyle::Solid;
    case PropensityUse::EstimatedPropensity: return StrokeStyle::Dashed;
    case PropensityUse::NoPropensity: return StrokeStyle::Dotted;
  }
  return StrokeStyle::Solid;
}

std::string_view dash_pattern(StrokeStyle style) noexcept {
  switch (style) {
    case StrokeStyle::Solid: return "";
    case StrokeStyle::Dashed: return "8,4";
    case StrokeStyle::Dotted: return "2,3";
  }
  return "";
}

std::string render_experiment_svg(std::span<const McReportEntry> entries, int experiment,
                                  const ReportOptions& options) {
  const std::set<std::string> omitted(options.omit.begin(), options.omit.end());
  for (const auto& name : omitted) {
    if (!is_canonical_estimator(name)) {
      throw Error(ErrorKind::UnknownEstimator, "cannot omit unknown estimator '" + name + "'");
    }
  }

  // estimator -> (n -> rmse), ordered by roster position
  std::map<std::size_t, std::pair<const McReportEntry*, std::map<std::size_t, double>>> series;
  std::set<std::size_t> ns;
  for (const auto& e : entries) {
    if (e.experiment != experiment) continue;
    if (!is_canonical_estimator(e.estimator)) {
      throw Error(ErrorKind::UnknownEstimator, "unknown estimator '" + e.estimator + "'");
    }
    ns.insert(e.n);
    if (omitted.contains(e.estimator)) continue;
    if (options.zoom_true_pi && e.category != PropensityUse::TruePropensity) continue;
    if (!std::isfinite(e.rmse) || (options.log_y && e.rmse <= 0.0)) continue;
    auto& s = series[roster_position(e.estimator)];
    s.first = &e;
    s.second[e.n] = e.rmse;
  }

  Axis x{.log = true};
  if (ns.empty()) {
    x.lo = 1.0;
    x.hi = 4.0;
  } else {
    x.lo = std::log10(static_cast<double>(*ns.begin()));
    x.hi = std::log10(static_cast<double>(*ns.rbegin()));
    if (x.hi - x.lo < 1e-9) {
      x.lo -= 0.5;
      x.hi += 0.5;
    }
  }

  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  for (const auto& [pos, s] : series) {
    for (const auto& [n, r] : s.second) {
      ymin = std::min(ymin, r);
      ymax = std::max(ymax, r);
    }
  }
  Axis y{.log = options.log_y};
  if (!std::isfinite(ymin)) {
    ymin = options.log_y ? 0.01 : 0.0;
    ymax = 1.0;
  }
  if (options.log_y) {
    y.lo = std::floor(std::log10(ymin) * 4.0) / 4.0;
    y.hi = std::ceil(std::log10(ymax) * 4.0) / 4.0;
    if (y.hi - y.lo < 0.25) y.hi = y.lo + 0.25;
  } else {
    y.lo = 0.0;
    y.hi = ymax > 0.0 ? ymax * 1.05 : 1.0;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double n) { return kLeft + x.fraction(n) * plot_w; };
  auto py = [&](double v) { return kTop + (1.0 - y.fraction(v)) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">Experiment " + std::to_string(experiment) +
         (options.zoom_true_pi ? " (true propensity estimators)" : "") + "</text>\n";

  // frame and ticks
  svg += "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(plot_h) + "\"/>\n";
  svg += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (const std::size_t n : ns) {
    const double xx = px(static_cast<double>(n));
    svg += "<line x1=\"" + num(xx) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(xx) +
           "\" y2=\"" + num(kTop + plot_h + 5) + "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + num(xx) + "\" y=\"" + num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + std::to_string(n) + "</text>\n";
  }
  constexpr int kYTicks = 5;
  for (int i = 0; i <= kYTicks; ++i) {
    const double t = y.lo + (y.hi - y.lo) * i / kYTicks;
    const double v = y.log ? std::pow(10.0, t) : t;
    const double yy = py(v);
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(yy) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(yy) + "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(yy + 4) +
           "\" text-anchor=\"end\">" + label(v) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\">n (log scale)</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 " + num(kTop + plot_h / 2) + ")\">RMSE" +
         (options.log_y ? " (log scale)" : "") + "</text>\n";
  svg += "</g>\n";

  // series
  svg += "<g fill=\"none\" stroke-width=\"2\">\n";
  for (const auto& [pos, s] : series) {
    const auto dash = dash_pattern(stroke_style(s.first->category));
    svg += "<polyline stroke=\"" + std::string(kPalette[pos % std::size(kPalette)]) + "\"";
    if (!dash.empty()) svg += " stroke-dasharray=\"" + std::string(dash) + "\"";
    svg += " points=\"";
    bool first = true;
    for (const auto& [n, r] : s.second) {
      if (!first) svg += ' ';
      first = false;
      svg += num(px(static_cast<double>(n))) + "," + num(py(r));
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n";

  // legend
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  double ly = kTop + 10;
  const double lx = kLeft + plot_w + 15;
  for (const auto& [pos, s] : series) {
    const auto dash = dash_pattern(stroke_style(s.first->category));
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 30) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" +
           std::string(kPalette[pos % std::size(kPalette)]) + "\" stroke-width=\"2\"";
    if (!dash.empty()) svg += " stroke-dasharray=\"" + std::string(dash) + "\"";
    svg += "/>\n";
    svg += "<text x=\"" + num(lx + 38) + "\" y=\"" + num(ly + 4) + "\">" + s.first->estimator +
           "</text>\n";
    ly += 18;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> write_report(std::span<const McReportEntry> entries,
                                                const std::filesystem::path& out_dir,
                                                const ReportOptions& options) {
  std::set<int> experiments;
  for (const auto& e : entries) experiments.insert(e.experiment);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoFailure,
                "cannot create '" + out_dir.string() + "': " + ec.message());
  }
  std::vector<std::filesystem::path> written;
  for (const int k : experiments) {
    const std::string svg = render_experiment_svg(entries, k, options);
    const auto path = out_dir / ("experiment_" + std::to_string(k) +
                                 (options.zoom_true_pi ? "_true_pi" : "") + ".svg");
    std::ofstream out(path, std::ios::binary);
    out << svg;
    out.close();
    if (!out) throw Error(ErrorKind::IoFailure, "cannot write '" + path.string() + "'");
    written.push_back(path);
  }
  return written;
}

}  // namespace rctsim
