#pragma once

// Standalone matplotlib scripts that read the CSV artifacts next to them.

#include <string>

namespace pstirap::cli {

std::string design_plot_script();
std::string propagate_plot_script();
std::string sweep_plot_script();
std::string noise_plot_script();
std::string shape_plot_script();

}  // namespace pstirap::cli
