#ifndef KSHAPE_SVG_HPP
#define KSHAPE_SVG_HPP

// Static SVG plots of sampled curves. Output depends only on the inputs:
// coordinates are printed with fixed precision and nothing time-dependent
// is emitted.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kshape/geometry.hpp"
#include "kshape/landmarks.hpp"
#include "kshape/shape.hpp"

namespace kshape {

enum class SvgLayout { Panels, Overlay };

struct SvgCurve {
  std::string label;
  SampledCurve curve;
};

struct SvgOptions {
  SvgLayout layout = SvgLayout::Panels;
  bool axes = false;
  /// Color D=3 curves by height. Without it they are drawn in the palette.
  bool color_by_z = true;
  /// Plot every curve in the xy plane (value against t for D=1) even when
  /// dimensions differ.
  bool projection = false;
  bool hull = false;  // needs landmarks
  std::optional<LandmarkSet> landmarks;
  std::string title;
  int panel_size = 320;
  int columns = 3;
};

namespace detail {

inline constexpr std::array<const char*, 4> kPalette{"#000000", "#1f4fd8", "#d62728", "#2ca02c"};

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Dark blue through teal to yellow.
inline std::string ramp_color(double u) {
  static constexpr double stops[3][3] = {{0, 0, 139}, {33, 145, 140}, {253, 231, 37}};
  u = std::clamp(u, 0.0, 1.0);
  const int seg = u < 0.5 ? 0 : 1;
  const double f = u < 0.5 ? u * 2.0 : (u - 0.5) * 2.0;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[seg][0] + f * (stops[seg + 1][0] - stops[seg][0]))),
                static_cast<int>(std::lround(stops[seg][1] + f * (stops[seg + 1][1] - stops[seg][1]))),
                static_cast<int>(std::lround(stops[seg][2] + f * (stops[seg + 1][2] - stops[seg][2]))));
  return buf;
}

struct PlotPoint {
  double x, y, z;
};

inline std::vector<PlotPoint> plot_points(const SampledCurve& c) {
  std::vector<PlotPoint> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    if (c.dim == 1) {
      out[i] = {c.t[i], p[0], 0.0};
    } else {
      out[i] = {p[0], p[1], c.dim >= 3 ? p[2] : 0.0};
    }
  }
  return out;
}

struct Bounds {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY, z0 = INFINITY, z1 = -INFINITY;
  void add(const PlotPoint& p) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
    z0 = std::min(z0, p.z);
    z1 = std::max(z1, p.z);
  }
};

class Frame {
 public:
  Frame(const Bounds& b, double ox, double oy, double size, bool equal_aspect) : ox_(ox), oy_(oy) {
    const double pad = 0.08 * size;
    const double inner = size - 2 * pad;
    double w = b.x1 - b.x0, h = b.y1 - b.y0;
    if (!(w > 0)) w = 1.0;
    if (!(h > 0)) h = 1.0;
    sx_ = inner / w;
    sy_ = inner / h;
    if (equal_aspect) sx_ = sy_ = std::min(sx_, sy_);
    // Center the drawing inside the panel.
    cx_ = 0.5 * (b.x0 + b.x1);
    cy_ = 0.5 * (b.y0 + b.y1);
    half_ = 0.5 * size;
  }
  double x(double v) const { return ox_ + half_ + (v - cx_) * sx_; }
  double y(double v) const { return oy_ + half_ - (v - cy_) * sy_; }

 private:
  double ox_, oy_, sx_ = 1, sy_ = 1, cx_ = 0, cy_ = 0, half_ = 0;
};

inline void emit_polyline(std::string& out, const Frame& f, const std::vector<PlotPoint>& pts, std::size_t from,
                          std::size_t to, const std::string& color) {
  out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = from; i <= to; ++i) {
    if (i > from) out += ' ';
    out += fmt3(f.x(pts[i].x)) + "," + fmt3(f.y(pts[i].y));
  }
  out += "\"/>\n";
}

// Height coloring: runs of segments sharing one of 32 color levels become
// one polyline.
inline void emit_ramped(std::string& out, const Frame& f, const std::vector<PlotPoint>& pts, double z0, double z1) {
  if (pts.size() < 2) return;
  const double dz = z1 > z0 ? z1 - z0 : 1.0;
  auto level = [&](std::size_t i) {
    const double zm = 0.5 * (pts[i].z + pts[i + 1].z);
    return std::min(31, static_cast<int>(std::floor((zm - z0) / dz * 32.0)));
  };
  std::size_t start = 0;
  int lv = level(0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const int l = level(i);
    if (l != lv) {
      emit_polyline(out, f, pts, start, i, ramp_color(lv / 31.0));
      start = i;
      lv = l;
    }
  }
  emit_polyline(out, f, pts, start, pts.size() - 1, ramp_color(lv / 31.0));
}

}  // namespace detail

/// Renders curves as one panel per curve or all in one panel. D=1 curves are
/// drawn as value against t, D=2 in the plane, D=3 projected to xy.
inline std::string render_svg(const std::vector<SvgCurve>& curves, const SvgOptions& opts = {}) {
  using namespace detail;
  if (curves.empty()) throw std::invalid_argument("nothing to render");
  const std::size_t dim = curves.front().curve.dim;
  for (const auto& c : curves) {
    if (c.curve.size() == 0) throw std::invalid_argument("curve \"" + c.label + "\" has no samples");
    if (c.curve.dim != dim && !opts.projection) {
      throw std::invalid_argument("curves have mixed dimensions; pass the projection option to plot them together");
    }
  }
  if (opts.hull && !opts.landmarks) throw std::invalid_argument("hull overlay needs landmarks");

  std::vector<std::vector<PlotPoint>> pts;
  Bounds b;
  for (const auto& c : curves) {
    pts.push_back(plot_points(c.curve));
    for (const auto& p : pts.back()) b.add(p);
  }
  std::vector<PlotPoint> marks;
  if (opts.landmarks) {
    const auto& lm = *opts.landmarks;
    for (std::size_t j = 0; j < lm.size(); ++j) {
      auto p = lm.point(j);
      marks.push_back(lm.dim() == 1 ? PlotPoint{static_cast<double>(j), p[0], 0.0}
                                    : PlotPoint{p[0], p[1], lm.dim() >= 3 ? p[2] : 0.0});
    }
    for (const auto& p : marks) b.add(p);
  }
  std::vector<PlotPoint> hull_pts;
  if (opts.hull) {
    std::vector<Vec2> v;
    for (const auto& p : marks) v.push_back({p.x, p.y});
    for (const auto& h : hull_2d(v).vertices) hull_pts.push_back({h[0], h[1], 0.0});
  }

  const bool panels = opts.layout == SvgLayout::Panels;
  const std::size_t n_panels = panels ? curves.size() : 1;
  const std::size_t cols = std::min<std::size_t>(n_panels, static_cast<std::size_t>(std::max(opts.columns, 1)));
  const std::size_t rows = (n_panels + cols - 1) / cols;
  const double size = opts.panel_size;
  const double top = opts.title.empty() ? 0.0 : 28.0;
  const double label_h = 22.0;
  const double width = cols * size;
  const double height = top + rows * (size + label_h);
  const bool equal_aspect = dim != 1 || opts.projection;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(width) + "\" height=\"" + fmt3(height) +
         "\" viewBox=\"0 0 " + fmt3(width) + " " + fmt3(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt3(width) + "\" height=\"" + fmt3(height) + "\" fill=\"#ffffff\"/>\n";
  if (!opts.title.empty()) {
    out += "<text x=\"" + fmt3(width / 2) + "\" y=\"20.000\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">" + xml_escape(opts.title) + "</text>\n";
  }

  for (std::size_t panel = 0; panel < n_panels; ++panel) {
    const double ox = static_cast<double>(panel % cols) * size;
    const double oy = top + static_cast<double>(panel / cols) * (size + label_h);
    const Frame f(b, ox, oy + label_h, size, equal_aspect);
    out += "<g>\n";
    if (panels) {
      out += "<text x=\"" + fmt3(ox + size / 2) + "\" y=\"" + fmt3(oy + 16) +
             "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
             xml_escape(curves[panel].label) + "</text>\n";
    }
    if (opts.axes) {
      const double ax = std::clamp(0.0, b.x0, b.x1), ay = std::clamp(0.0, b.y0, b.y1);
      out += "<line x1=\"" + fmt3(f.x(b.x0)) + "\" y1=\"" + fmt3(f.y(ay)) + "\" x2=\"" + fmt3(f.x(b.x1)) +
             "\" y2=\"" + fmt3(f.y(ay)) + "\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n";
      out += "<line x1=\"" + fmt3(f.x(ax)) + "\" y1=\"" + fmt3(f.y(b.y0)) + "\" x2=\"" + fmt3(f.x(ax)) +
             "\" y2=\"" + fmt3(f.y(b.y1)) + "\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n";
    }
    if (!hull_pts.empty()) {
      out += "<polygon fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"0.8\" points=\"";
      for (std::size_t i = 0; i < hull_pts.size(); ++i) {
        if (i) out += ' ';
        out += fmt3(f.x(hull_pts[i].x)) + "," + fmt3(f.y(hull_pts[i].y));
      }
      out += "\"/>\n";
    }
    const std::size_t first = panels ? panel : 0;
    const std::size_t last = panels ? panel + 1 : curves.size();
    for (std::size_t c = first; c < last; ++c) {
      const auto& p = pts[c];
      if (curves[c].curve.dim >= 3 && opts.color_by_z) {
        emit_ramped(out, f, p, b.z0, b.z1);
      } else {
        emit_polyline(out, f, p, 0, p.size() - 1, kPalette[c % kPalette.size()]);
      }
    }
    for (const auto& m : marks) {
      out += "<circle cx=\"" + fmt3(f.x(m.x)) + "\" cy=\"" + fmt3(f.y(m.y)) +
             "\" r=\"2.000\" fill=\"#000000\"/>\n";
    }
    if (!panels) {
      for (std::size_t c = 0; c < curves.size(); ++c) {
        const double ly = oy + 14 + 14 * static_cast<double>(c);
        out += "<text x=\"" + fmt3(ox + 8) + "\" y=\"" + fmt3(ly) + "\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"" + kPalette[c % kPalette.size()] + "\">" + xml_escape(curves[c].label) + "</text>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace kshape

#endif  // KSHAPE_SVG_HPP
