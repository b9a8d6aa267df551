#include "navsim/plot.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace navsim::io {

namespace {

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(const std::vector<Eigen::Vector2d>& pts) {
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x());
      xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y());
      ymax = std::max(ymax, p.y());
    }
  }
  bool empty() const { return !(xmin <= xmax); }
};

double nice_step(double range) {
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac <= 1.0) return mag;
  if (frac <= 2.0) return 2.0 * mag;
  if (frac <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v + 0.0);  // normalize -0
  return buf;
}

}  // namespace

std::string render_svg(const PlotSeries& series) {
  Box box;
  box.add(series.ref);
  box.add(series.truth);
  box.add(series.est);
  box.add(series.meas);
  if (box.empty()) {
    throw std::invalid_argument("nothing to plot: all series are empty");
  }
  if (box.xmax - box.xmin < 1e-9) {
    box.xmin -= 1.0;
    box.xmax += 1.0;
  }
  if (box.ymax - box.ymin < 1e-9) {
    box.ymin -= 1.0;
    box.ymax += 1.0;
  }
  const double pad_x = 0.05 * (box.xmax - box.xmin);
  const double pad_y = 0.05 * (box.ymax - box.ymin);
  box.xmin -= pad_x;
  box.xmax += pad_x;
  box.ymin -= pad_y;
  box.ymax += pad_y;

  const double width = 800.0;
  const double height = 600.0;
  const double ml = 64.0, mr = 24.0, mt = 24.0, mb = 48.0;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;
  const double scale =
      std::min(plot_w / (box.xmax - box.xmin), plot_h / (box.ymax - box.ymin));
  const double x_off = ml + 0.5 * (plot_w - scale * (box.xmax - box.xmin));
  const double y_off = mt + 0.5 * (plot_h - scale * (box.ymax - box.ymin));

  auto px = [&](double x) { return x_off + scale * (x - box.xmin); };
  auto py = [&](double y) { return y_off + scale * (box.ymax - y); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"#888\"/>\n";

  const double step = nice_step(
      std::max(box.xmax - box.xmin, box.ymax - box.ymin));
  for (double x = std::ceil(box.xmin / step) * step; x <= box.xmax + 1e-9;
       x += step) {
    if (px(x) < ml - 1e-6 || px(x) > width - mr + 1e-6) continue;
    svg << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(mt + plot_h)
        << "\" x2=\"" << fmt(px(x)) << "\" y2=\"" << fmt(mt + plot_h + 5)
        << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(mt + plot_h + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333\">"
        << fmt_tick(x) << "</text>\n";
  }
  for (double y = std::ceil(box.ymin / step) * step; y <= box.ymax + 1e-9;
       y += step) {
    if (py(y) < mt - 1e-6 || py(y) > mt + plot_h + 1e-6) continue;
    svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(py(y))
        << "\" x2=\"" << fmt(ml) << "\" y2=\"" << fmt(py(y))
        << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#333\">"
        << fmt_tick(y) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(ml + plot_w / 2) << "\" y=\"" << fmt(height - 10)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\">x [m]"
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(mt + plot_h / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\" "
      << "transform=\"rotate(-90 16 " << fmt(mt + plot_h / 2) << ")\">y [m]"
      << "</text>\n";

  auto polyline = [&](const std::vector<Eigen::Vector2d>& pts,
                      const char* color) {
    if (pts.size() < 2) return;
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) {
      svg << fmt(px(p.x())) << "," << fmt(py(p.y())) << " ";
    }
    svg << "\"/>\n";
  };
  polyline(series.ref, "#2a9d2a");
  polyline(series.truth, "#1f5fbf");
  polyline(series.est, "#e8821e");
  for (const auto& p : series.meas) {
    svg << "<circle cx=\"" << fmt(px(p.x())) << "\" cy=\"" << fmt(py(p.y()))
        << "\" r=\"2\" fill=\"#d03030\" fill-opacity=\"0.6\"/>\n";
  }

  double ly = mt + 16.0;
  auto legend = [&](bool present, const char* color, const char* label,
                    bool dot) {
    if (!present) return;
    const double lx = width - mr - 150.0;
    if (dot) {
      svg << "<circle cx=\"" << fmt(lx + 12) << "\" cy=\"" << fmt(ly - 4)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else {
      svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4)
          << "\" x2=\"" << fmt(lx + 24) << "\" y2=\"" << fmt(ly - 4)
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    }
    svg << "<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"12\" fill=\"#333\">" << label << "</text>\n";
    ly += 18.0;
  };
  legend(series.ref.size() >= 2, "#2a9d2a", "reference", false);
  legend(series.truth.size() >= 2, "#1f5fbf", "truth", false);
  legend(series.est.size() >= 2, "#e8821e", "estimate", false);
  legend(!series.meas.empty(), "#d03030", "measurements", true);

  svg << "</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace navsim::io
