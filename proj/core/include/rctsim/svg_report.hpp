#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rctsim/montecarlo.hpp"

namespace rctsim {

struct ReportOptions {
  bool zoom_true_pi = false;       // keep only true-propensity estimators
  std::vector<std::string> omit;   // estimator names to leave out
  bool log_y = false;
};

enum class StrokeStyle { Solid, Dashed, Dotted };

StrokeStyle stroke_style(PropensityUse category) noexcept;

/// SVG stroke-dasharray value; empty for solid.
std::string_view dash_pattern(StrokeStyle style) noexcept;

/// RMSE against n on a log x axis, one polyline per estimator.
/// Throws UnknownEstimator for an omitted name outside the roster.
std::string render_experiment_svg(std::span<const McReportEntry> entries, int experiment,
                                  const ReportOptions& options);

/// One file per experiment present in `entries`: experiment_<k>.svg, or
/// experiment_<k>_true_pi.svg with zoom. Returns the paths written.
/// Throws IoFailure.
std::vector<std::filesystem::path> write_report(std::span<const McReportEntry> entries,
                                                const std::filesystem::path& out_dir,
                                                const ReportOptions& options);

}  // namespace rctsim
