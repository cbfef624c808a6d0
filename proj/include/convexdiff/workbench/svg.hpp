#pragma once

// Deterministic SVG rendering of planar polytopes.
//
// The viewBox is the bounding box of all sets plus a 10% margin, with the y
// axis flipped so that larger y is drawn higher. Sets are drawn in input
// order; points become dots, segments open paths and polygons closed paths.

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "convexdiff/minimal_element.hpp"

namespace convexdiff::workbench {

struct SvgItem {
  std::vector<std::pair<double, double>> points;  // canonical vertex order
  std::string label;
  std::string role;  // "minuend", "subtrahend", "element", ... selects the colour
};

struct SvgStyle {
  double width = 640;  // pixels; the height follows the aspect ratio
  bool label_vertices = false;
  double stroke = 0.006;  // fraction of the larger viewBox side
};

template <class T>
SvgItem svg_item(const Polytope<T>& x, std::string label, std::string role) {
  if (x.dim() != 2) throw UnsupportedDimension(x.dim(), "SVG rendering");
  SvgItem item{{}, std::move(label), std::move(role)};
  for (const auto& v : x.vertices()) item.points.emplace_back(to_double(v[0]), to_double(v[1]));
  return item;
}

template <class T>
SvgItem svg_item(const MinimalElementReport<T>& r, std::string label) {
  return svg_item(r.element, std::move(label), "element");
}

namespace detail {

inline std::string fmt(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

inline std::string escape(const std::string& s) {
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

inline std::string colour(const std::string& role, std::size_t index) {
  if (role == "minuend") return "#1f4e9c";
  if (role == "subtrahend") return "#b22222";
  static const char* palette[] = {"#2a9d8f", "#e76f51", "#8e44ad", "#f4a261", "#264653", "#6a994e", "#d62828", "#457b9d"};
  return palette[index % 8];
}

}  // namespace detail

inline std::string render_svg(const std::vector<SvgItem>& items, const SvgStyle& style = {}) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const auto& it : items)
    for (const auto& [x, y] : it.points) {
      if (!any) {
        x0 = x1 = x;
        y0 = y1 = y;
        any = true;
      }
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  double span = std::max({x1 - x0, y1 - y0});
  if (span <= 0) span = 1;
  const double margin = 0.1 * span;
  const double vx = x0 - margin, vy = -y1 - margin;
  const double vw = (x1 - x0) + 2 * margin, vh = (y1 - y0) + 2 * margin;
  const double height = style.width * vh / vw;
  const double sw = style.stroke * std::max(vw, vh);
  using detail::fmt;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width) + "\" height=\"" + fmt(height) +
         "\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " + fmt(vw) + " " + fmt(vh) + "\">\n";
  std::size_t index = 0;
  for (const auto& it : items) {
    const auto col = detail::colour(it.role, index++);
    out += "<g class=\"" + detail::escape(it.role) + "\">";
    if (!it.label.empty()) out += "<title>" + detail::escape(it.label) + "</title>";
    if (it.points.size() == 1) {
      const auto& [x, y] = it.points[0];
      out += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(-y) + "\" r=\"" + fmt(1.5 * sw) + "\" fill=\"" + col + "\"/>";
    } else if (!it.points.empty()) {
      std::string d;
      for (std::size_t i = 0; i < it.points.size(); ++i)
        d += (i ? " L " : "M ") + fmt(it.points[i].first) + " " + fmt(-it.points[i].second);
      const bool closed = it.points.size() > 2;
      if (closed) d += " Z";
      out += "<path d=\"" + d + "\" fill=\"" + (closed ? col : std::string("none")) + "\" fill-opacity=\"0.15\" stroke=\"" +
             col + "\" stroke-width=\"" + fmt(sw) + "\"/>";
    }
    if (style.label_vertices)
      for (const auto& [x, y] : it.points)
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(-y) + "\" font-size=\"" + fmt(3 * sw) + "\">(" + fmt(x) + ", " +
               fmt(y) + ")</text>";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace convexdiff::workbench
