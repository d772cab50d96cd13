#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pillow/ellmod.hpp"
#include "pillow/error.hpp"
#include "pillow/tiling.hpp"

namespace pillow {

namespace detail {

inline std::string fixed6(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace detail

/**
 * SVG of the tiling: each copy of the pillowcase is the parallelogram
 * spanned by 2 and tau (tau = i when no modulus is given), front square on
 * the left. Rows follow the cycles of v from left to right, so the right
 * side of a tile is glued to the left side of its neighbour; top and bottom
 * halves are glued by h1 and h2 as labeled.
 */
inline std::string render_flat_picture(const PillowTiling& t, std::optional<ellmod::HalfPlanePoint> modulus,
                                       const std::string& tower_id = "") {
  using detail::fixed6;
  const double unit = 60.0, margin = 30.0, gap = 30.0;
  std::complex<double> tau = modulus ? modulus->tau : std::complex<double>(0.0, 1.0);
  if (!(tau.imag() > 0.0)) fail(errc::not_in_upper_half_plane, "modulus must lie in the upper half plane");

  auto rows = t.v.cycles();
  double shift = tau.real() < 0.0 ? -tau.real() : 0.0;
  std::size_t widest = 0;
  for (const auto& r : rows) widest = std::max(widest, r.size());
  double width = 2 * margin + unit * (2.0 * static_cast<double>(widest) + std::abs(tau.real()));
  double row_h = unit * tau.imag() + gap;
  double height = 2 * margin + row_h * static_cast<double>(rows.size());

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed6(width) + "\" height=\"" + fixed6(height) +
       "\" viewBox=\"0 0 " + fixed6(width) + " " + fixed6(height) + "\">\n";
  s += "<!-- tower: " + (tower_id.empty() ? std::string("-") : tower_id) + " -->\n";
  s += "<!-- corner assignment: " + corner_assignment_text() + " -->\n";
  s += "<!-- h1: " + t.h1.to_cycle_string() + " h2: " + t.h2.to_cycle_string() + " v: " + t.v.to_cycle_string() +
       " -->\n";
  s += "<!-- modulus: " + ellmod::format_complex(tau, 6) + " -->\n";
  s += "<g font-family=\"sans-serif\" font-size=\"10\" stroke-linejoin=\"round\">\n";

  // (x, y) in lattice coordinates: x along 1, y along tau; SVG y grows downward.
  auto xy = [&](double ox, double oy, double x, double y) {
    return std::pair<double, double>{ox + unit * (x + y * tau.real()), oy - unit * (y * tau.imag())};
  };
  auto pt = [&](double ox, double oy, double x, double y) {
    auto [px, py] = xy(ox, oy, x, y);
    return fixed6(px) + "," + fixed6(py);
  };
  auto text_at = [&](double ox, double oy, double x, double y, const std::string& label, const char* cls) {
    auto [px, py] = xy(ox, oy, x, y);
    s += "<text class=\"" + std::string(cls) + "\" x=\"" + fixed6(px) + "\" y=\"" + fixed6(py) +
         "\" text-anchor=\"middle\">" + label + "</text>\n";
  };

  for (std::size_t r = 0; r < rows.size(); ++r) {
    double oy = margin + row_h * static_cast<double>(r) + unit * tau.imag();
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      point_t tile = rows[r][k];
      double ox = margin + unit * (shift + 2.0 * static_cast<double>(k));
      std::string id = std::to_string(tile + 1);
      s += "<polygon class=\"tile\" points=\"" + pt(ox, oy, 0, 0) + " " + pt(ox, oy, 2, 0) + " " + pt(ox, oy, 2, 1) +
           " " + pt(ox, oy, 0, 1) + "\" fill=\"#f4f1e8\" stroke=\"#333\" stroke-width=\"1\"/>\n";
      auto [fx1, fy1] = xy(ox, oy, 1, 0);
      auto [fx2, fy2] = xy(ox, oy, 1, 1);
      s += "<line class=\"fold\" x1=\"" + fixed6(fx1) + "\" y1=\"" + fixed6(fy1) + "\" x2=\"" + fixed6(fx2) +
           "\" y2=\"" + fixed6(fy2) + "\" stroke=\"#999\" stroke-dasharray=\"3,3\"/>\n";
      text_at(ox, oy, 1, 0.5, id, "tile-id");
      text_at(ox, oy, 1, 1.08, "h1:" + std::to_string(t.h1(tile) + 1), "edge-top");
      text_at(ox, oy, 1, -0.2, "h2:" + std::to_string(t.h2(tile) + 1), "edge-bottom");
      if (k + 1 == rows[r].size()) text_at(ox, oy, 2.25, 0.5, "v:" + std::to_string(t.v(tile) + 1), "edge-right");
      const std::pair<double, double> corner_xy[4] = {{1, 1}, {0, 1}, {1, 0}, {0, 0}};
      for (std::size_t c = 0; c < 4; ++c) {
        auto [px, py] = xy(ox, oy, corner_xy[c].first, corner_xy[c].second);
        s += "<circle class=\"corner-" + std::string(1, corner_of_position[c]) + "\" cx=\"" + fixed6(px) + "\" cy=\"" +
             fixed6(py) + "\" r=\"2.500000\" fill=\"#333\"/>\n";
      }
    }
  }
  s += "</g>\n</svg>\n";
  return s;
}

inline void emit_flat_picture(const PillowTiling& t, std::optional<ellmod::HalfPlanePoint> modulus,
                              const std::string& path, const std::string& tower_id = "") {
  std::string body = render_flat_picture(t, modulus, tower_id);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_failure, "cannot open " + path);
  out << body;
  if (!out) fail(errc::io_failure, "write failed for " + path);
}

}  // namespace pillow
