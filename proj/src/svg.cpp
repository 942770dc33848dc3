#include "cylbuck/svg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 90, kRight = 30, kTop = 50, kBottom = 70;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Axes {
  double x0, x1, y0, y1;  // decades
  double px(double lx) const { return kLeft + (lx - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double ly) const { return kTop + (y1 - ly) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

}  // namespace

std::string loglog_svg(const std::string& title, const ExponentFit& fit, const BracketVerdict& verdict,
                       bool timestamp) {
  if (fit.h.empty()) throw Error(ErrorCode::InvalidConfig, "nothing to plot");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < fit.h.size(); ++i) {
    lx.push_back(std::log10(fit.h[i]));
    ly.push_back(std::log10(fit.value[i]));
  }
  Axes ax{std::floor(*std::min_element(lx.begin(), lx.end())), std::ceil(*std::max_element(lx.begin(), lx.end())),
          std::floor(*std::min_element(ly.begin(), ly.end())), std::ceil(*std::max_element(ly.begin(), ly.end()))};
  if (ax.x1 <= ax.x0) ax.x1 = ax.x0 + 1;
  if (ax.y1 <= ax.y0) ax.y1 = ax.y0 + 1;

  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    o << "<!-- generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << " -->\n";
  }
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\" "
       "font-family=\"sans-serif\" font-size=\"13\">\n";
  o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  o << "<defs><clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
    << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom << "\"/></clipPath></defs>\n";
  o << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(title) << "</text>\n";

  // decade gridlines and labels
  o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double d = ax.x0; d <= ax.x1 + 0.5; d += 1)
    o << "<line x1=\"" << ax.px(d) << "\" y1=\"" << kTop << "\" x2=\"" << ax.px(d) << "\" y2=\""
      << kHeight - kBottom << "\"/>\n";
  for (double d = ax.y0; d <= ax.y1 + 0.5; d += 1)
    o << "<line x1=\"" << kLeft << "\" y1=\"" << ax.py(d) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << ax.py(d) << "\"/>\n";
  o << "</g>\n";
  for (double d = ax.x0; d <= ax.x1 + 0.5; d += 1)
    o << "<text x=\"" << ax.px(d) << "\" y=\"" << kHeight - kBottom + 20
      << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  for (double d = ax.y0; d <= ax.y1 + 0.5; d += 1)
    o << "<text x=\"" << kLeft - 8 << "\" y=\"" << ax.py(d) + 4 << "\" text-anchor=\"end\">1e"
      << static_cast<int>(d) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
    << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"400\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">h</text>\n";
  o << "<text x=\"25\" y=\"300\" text-anchor=\"middle\" transform=\"rotate(-90 25 300)\">value</text>\n";

  // reference slopes through the point of largest h
  const double ax0 = lx.front(), ay0 = ly.front();
  const struct { double slope; const char* label; const char* color; } refs[] = {
      {1.0, "slope 1", "#888888"}, {1.5, "slope 3/2", "#2a9d8f"}, {1.6, "slope 8/5", "#e76f51"}};
  o << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\">\n";
  for (const auto& r : refs)
    o << "<line x1=\"" << ax.px(ax.x0) << "\" y1=\"" << ax.py(ay0 + r.slope * (ax.x0 - ax0)) << "\" x2=\""
      << ax.px(ax.x1) << "\" y2=\"" << ax.py(ay0 + r.slope * (ax.x1 - ax0)) << "\" stroke=\"" << r.color
      << "\"/>\n";
  o << "</g>\n";

  // fitted line over the data range
  const double l10 = std::log(10.0);
  auto fitted = [&](double x) { return (fit.intercept + fit.alpha * x * l10) / l10; };
  const double xa = *std::min_element(lx.begin(), lx.end()), xb = *std::max_element(lx.begin(), lx.end());
  o << "<line x1=\"" << ax.px(xa) << "\" y1=\"" << ax.py(fitted(xa)) << "\" x2=\"" << ax.px(xb) << "\" y2=\""
    << ax.py(fitted(xb)) << "\" stroke=\"#1d3557\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i)
    o << "<circle cx=\"" << ax.px(lx[i]) << "\" cy=\"" << ax.py(ly[i]) << "\" r=\"4.5\" fill=\"#e63946\"/>\n";

  // legend and annotation
  double ly0 = kTop + 20;
  for (const auto& r : refs) {
    o << "<line x1=\"" << kLeft + 15 << "\" y1=\"" << ly0 << "\" x2=\"" << kLeft + 45 << "\" y2=\"" << ly0
      << "\" stroke=\"" << r.color << "\" stroke-dasharray=\"6 4\"/>\n";
    o << "<text x=\"" << kLeft + 52 << "\" y=\"" << ly0 + 4 << "\">" << r.label << "</text>\n";
    ly0 += 18;
  }
  o << std::setprecision(4);
  o << "<text x=\"" << kLeft + 15 << "\" y=\"" << ly0 + 8 << "\" font-size=\"15\">alpha = " << fit.alpha
    << "  (R2 = " << std::setprecision(6) << fit.r2 << ")</text>\n";
  o << std::setprecision(3);
  o << "<text x=\"" << kLeft + 15 << "\" y=\"" << ly0 + 28 << "\">bracket [" << verdict.lo << ", " << verdict.hi
    << "] +/- " << verdict.slack << ": " << (verdict.pass ? "pass" : "fail") << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const ExponentFit& fit,
                      const BracketVerdict& verdict, bool timestamp) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  out << loglog_svg(title, fit, verdict, timestamp);
}

}  // namespace cylbuck
