#pragma once

#include <optional>
#include <string>
#include <vector>

namespace machlab {

// Minimal log-log scatter plot with an optional fitted line. Points with
// non-positive coordinates are dropped.
struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

struct FittedLine {
    double slope = 0.0;
    double intercept = 0.0; // in log space: ln y = intercept + slope ln x
    std::string label;
};

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::vector<PlotSeries>& series,
                      const std::optional<FittedLine>& fit);

} // namespace machlab
