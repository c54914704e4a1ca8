#ifndef UXSIM_SVG_CHART_HPP
#define UXSIM_SVG_CHART_HPP

#include <string>
#include <vector>

namespace uxsim {

// Minimal static line charts; CSV remains the authoritative output.
struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<ChartSeries>& series);

}  // namespace uxsim

#endif  // UXSIM_SVG_CHART_HPP
