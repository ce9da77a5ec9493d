#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "springleg/baseline.hpp"
#include "springleg/error.hpp"
#include "springleg/io.hpp"

namespace springleg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 28.0;
constexpr double kBottom = 52.0;

struct Point {
  double x;
  double y;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(double x_max, double y_max) : x_max_(x_max), y_max_(y_max) {}

  double px(double x) const { return kLeft + x / x_max_ * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - y / y_max_ * (kHeight - kTop - kBottom); }

  void polyline(const std::vector<Point>& pts, const char* stroke, const char* extra = "") {
    if (pts.empty()) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" " << extra
          << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << ' ';
      body_ << fmt(px(pts[i].x)) << ',' << fmt(py(pts[i].y));
    }
    body_ << "\"/>\n";
  }

  std::string finish(const std::string& title, const std::string& x_label,
                     const std::string& y_label) const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
       << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
       << title << "</text>\n";
    // Axes and ticks.
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(x_max_))
       << "\" y2=\"" << fmt(py(0)) << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(0))
       << "\" y2=\"" << fmt(py(y_max_)) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
      const double xv = x_max_ * i / 5.0;
      const double yv = y_max_ * i / 5.0;
      char xl[32], yl[32];
      std::snprintf(xl, sizeof xl, "%.4g", xv);
      std::snprintf(yl, sizeof yl, "%.3g", yv);
      os << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(py(0) + 16)
         << "\" text-anchor=\"middle\" font-size=\"10\">" << xl << "</text>\n"
         << "<text x=\"" << fmt(px(0) - 6) << "\" y=\"" << fmt(py(yv) + 3)
         << "\" text-anchor=\"end\" font-size=\"10\">" << yl << "</text>\n";
    }
    os << "<text x=\"" << fmt((px(0) + px(x_max_)) / 2) << "\" y=\"" << fmt(kHeight - 12)
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n"
       << "<text x=\"14\" y=\"" << fmt((py(0) + py(y_max_)) / 2)
       << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
       << fmt((py(0) + py(y_max_)) / 2) << ")\">" << y_label << "</text>\n";
    os << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  double x_max_;
  double y_max_;
  std::ostringstream body_;
};

double nice_max(double v) { return v > 0.0 ? v * 1.05 : 1.0; }

}  // namespace

std::string plot_svg(const SimResult& result, PlotKind kind, const Configuration& config) {
  if (result.trajectories.empty()) throw Error(ErrorKind::Data, "cannot plot an empty result");

  const double s0 = config.spring.free_length;
  const double cap = result.force_cap;
  const double e1 = result.e1_max;
  const bool force = kind == PlotKind::ForceDeflection;
  auto y_of = [&](const TrajectorySample& s) {
    return force ? s.hip_force / cap : s.stored_energy / e1;
  };

  std::vector<std::vector<Point>> strokes;
  double x_max = 0.0, y_max = 0.0;
  for (const auto& t : result.trajectories) {
    std::vector<Point> pts;
    pts.reserve(t.samples.size());
    for (const auto& s : t.samples) {
      pts.push_back({s0 - s.spring_length, y_of(s)});
      x_max = std::max(x_max, pts.back().x);
      y_max = std::max(y_max, pts.back().y);
    }
    strokes.push_back(std::move(pts));
  }

  // Single squat of the fixed-spring leg with the leg force falling to zero
  // at the bottom; it ends at the weight (force) or E1max (energy).
  const double dl = config.leg.max_deformation;
  const double weight = config.body.weight();
  const double k_base = required_stiffness(0.0, config.body, config.leg);
  std::vector<Point> reference;
  for (int i = 0; i <= 40; ++i) {
    const double d = dl * i / 40.0;
    reference.push_back({d, force ? k_base * d / cap : 0.5 * k_base * d * d / e1});
  }
  x_max = std::max(x_max, dl);
  y_max = std::max(y_max, force ? weight / cap : 1.0);

  // Same spring compressed to the same deflection in a single stroke.
  std::vector<Point> single;
  const double k = config.spring.stiffness;
  for (int i = 0; i <= 40; ++i) {
    const double d = x_max * i / 40.0;
    if (d > s0 - config.spring.solid_length) break;
    single.push_back({d, force ? k * d / cap : 0.5 * k * d * d / e1});
  }
  // Keep the single-stroke curve from flattening the accumulation curves.
  const double y_limit = nice_max(std::max(y_max, force ? 1.0 : 0.0)) * 1.5;
  while (!single.empty() && single.back().y > y_limit) single.pop_back();
  for (const auto& p : single) y_max = std::max(y_max, p.y);

  Canvas canvas(nice_max(x_max), nice_max(y_max));
  canvas.polyline(reference, "#888888", "stroke-dasharray=\"6 4\"");
  canvas.polyline(single, "#bbbbbb", "stroke-dasharray=\"2 3\"");
  if (force) canvas.polyline({{0.0, 1.0}, {nice_max(x_max), 1.0}}, "#cc3333", "stroke-dasharray=\"1 0\"");
  for (std::size_t i = 0; i < strokes.size(); ++i) {
    canvas.polyline(strokes[i], "#1f4e9a");
    if (i + 1 < strokes.size() && !strokes[i].empty() && !strokes[i + 1].empty())
      canvas.polyline({strokes[i].back(), strokes[i + 1].front()}, "#1f4e9a", "stroke-dasharray=\"4 3\"");
  }

  return force ? canvas.finish("Force-deflection over repeated squats", "spring deflection s0 - s [m]",
                               "hip force / force cap")
               : canvas.finish("Stored energy over repeated squats", "spring deflection s0 - s [m]",
                               "stored energy / E1max");
}

void emit_plot_svg(const SimResult& result, PlotKind kind, const Configuration& config,
                   const std::filesystem::path& path) {
  write_text_file(path, plot_svg(result, kind, config));
}

}  // namespace springleg
