#pragma once

#include <filesystem>
#include <string>

#include "cylbuck/scaling.hpp"

namespace cylbuck {

/// 800 x 600 log-log plot of a fitted sweep: decade gridlines, data points,
/// the fitted line, dashed reference slopes 1, 3/2, 8/5 and the fitted
/// exponent. With `timestamp` an XML comment records the generation time.
std::string loglog_svg(const std::string& title, const ExponentFit& fit, const BracketVerdict& verdict,
                       bool timestamp);
void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const ExponentFit& fit,
                      const BracketVerdict& verdict, bool timestamp);

}  // namespace cylbuck
