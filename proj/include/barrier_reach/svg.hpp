#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "barrier_reach/geometry.hpp"

namespace barrier_reach {

/// Minimal SVG writer with a world-to-pixel viewport (y axis flipped).
class SvgCanvas {
 public:
  SvgCanvas(double min_x, double min_y, double max_x, double max_y,
            int width_px = 800);

  void rect(double x0, double y0, double x1, double y1,
            const std::string& fill, double opacity = 1.0,
            const std::string& stroke = "none");
  void box(const HyperBox& b, const std::string& fill, double opacity = 1.0,
           const std::string& stroke = "none");
  void polyline(const std::vector<Eigen::Vector2d>& points,
                const std::string& stroke, double width = 1.5,
                const std::string& dash = "");
  void polygon(const std::vector<Eigen::Vector2d>& points,
               const std::string& stroke, double width = 1.0);
  void segments(const std::vector<std::array<Eigen::Vector2d, 2>>& segs,
                const std::string& stroke, double width = 1.0);
  void circle(double x, double y, double radius_px, const std::string& fill);
  void text(double x, double y, const std::string& content, int size_px = 12);

  std::string str() const;
  void save(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double min_x_, min_y_, max_x_, max_y_;
  int width_px_, height_px_;
  std::string body_;
};

/// Zero-level segments of f over the window via marching squares on a
/// resolution x resolution grid with linear edge interpolation.
std::vector<std::array<Eigen::Vector2d, 2>> implicit_curve_segments(
    const std::function<double(double, double)>& f, double min_x, double min_y,
    double max_x, double max_y, int resolution = 200);

/// Outline of a 2-D octagon (its eight constraint lines clipped to each
/// other), ordered counterclockwise; used for plotting working regions.
std::vector<Eigen::Vector2d> octagon_outline(const OctagonRegion& region);

}  // namespace barrier_reach
