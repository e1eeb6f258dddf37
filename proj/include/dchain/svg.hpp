#pragma once

#include <string>
#include <vector>

#include "dchain/punctured_disk.hpp"

namespace dchain {

/// Figure of the ambient disk, the punctures with their removed
/// neighbourhoods, the path and the disks of the cover.
std::string cover_svg(const PuncturedDisk& pd, const DiskCover& cover);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Scatter plot with straight axes; callers pass logarithms for a log-log
/// plot.
std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::vector<SvgSeries>& series);

}  // namespace dchain
