#include "barrier_reach/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace barrier_reach {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double min_x, double min_y, double max_x, double max_y,
                     int width_px)
    : min_x_(min_x), min_y_(min_y), max_x_(max_x), max_y_(max_y),
      width_px_(width_px) {
  const double aspect = (max_y_ - min_y_) / (max_x_ - min_x_);
  height_px_ = static_cast<int>(std::lround(width_px_ * aspect));
}

double SvgCanvas::px(double x) const {
  return (x - min_x_) / (max_x_ - min_x_) * width_px_;
}

double SvgCanvas::py(double y) const {
  return height_px_ - (y - min_y_) / (max_y_ - min_y_) * height_px_;
}

void SvgCanvas::rect(double x0, double y0, double x1, double y1,
                     const std::string& fill, double opacity,
                     const std::string& stroke) {
  body_ += "<rect x=\"" + num(px(x0)) + "\" y=\"" + num(py(y1)) + "\" width=\"" +
           num(px(x1) - px(x0)) + "\" height=\"" + num(py(y0) - py(y1)) +
           "\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) +
           "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgCanvas::box(const HyperBox& b, const std::string& fill, double opacity,
                    const std::string& stroke) {
  rect(b.lower[0], b.lower[1], b.upper[0], b.upper[1], fill, opacity, stroke);
}

void SvgCanvas::polyline(const std::vector<Eigen::Vector2d>& points,
                         const std::string& stroke, double width,
                         const std::string& dash) {
  if (points.size() < 2) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
           num(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
  body_ += " points=\"";
  for (const auto& p : points) {
    body_ += num(px(p[0])) + "," + num(py(p[1])) + " ";
  }
  body_ += "\"/>\n";
}

void SvgCanvas::polygon(const std::vector<Eigen::Vector2d>& points,
                        const std::string& stroke, double width) {
  if (points.size() < 2) return;
  std::vector<Eigen::Vector2d> closed = points;
  closed.push_back(points.front());
  polyline(closed, stroke, width);
}

void SvgCanvas::segments(const std::vector<std::array<Eigen::Vector2d, 2>>& segs,
                         const std::string& stroke, double width) {
  for (const auto& s : segs) {
    body_ += "<line x1=\"" + num(px(s[0][0])) + "\" y1=\"" + num(py(s[0][1])) +
             "\" x2=\"" + num(px(s[1][0])) + "\" y2=\"" + num(py(s[1][1])) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\"/>\n";
  }
}

void SvgCanvas::circle(double x, double y, double radius_px,
                       const std::string& fill) {
  body_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" +
           num(radius_px) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& content,
                     int size_px) {
  body_ += "<text x=\"" + num(px(x)) + "\" y=\"" + num(py(y)) +
           "\" font-size=\"" + std::to_string(size_px) +
           "\" font-family=\"sans-serif\">" + content + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width_px_) + "\" height=\"" + std::to_string(height_px_) +
         "\" viewBox=\"0 0 " + std::to_string(width_px_) + " " +
         std::to_string(height_px_) + "\">\n<rect width=\"100%\" height=\"100%\"" +
         " fill=\"white\"/>\n" + body_ + "</svg>\n";
}

void SvgCanvas::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << str();
}

std::vector<std::array<Eigen::Vector2d, 2>> implicit_curve_segments(
    const std::function<double(double, double)>& f, double min_x, double min_y,
    double max_x, double max_y, int resolution) {
  std::vector<std::array<Eigen::Vector2d, 2>> segments;
  const double dx = (max_x - min_x) / resolution;
  const double dy = (max_y - min_y) / resolution;

  std::vector<double> row0(resolution + 1), row1(resolution + 1);
  for (int i = 0; i <= resolution; ++i) row0[i] = f(min_x + i * dx, min_y);

  auto lerp = [](double xa, double xb, double fa, double fb) {
    const double t = fa / (fa - fb);
    return xa + t * (xb - xa);
  };

  for (int jy = 0; jy < resolution; ++jy) {
    const double y0 = min_y + jy * dy;
    const double y1 = y0 + dy;
    for (int i = 0; i <= resolution; ++i) row1[i] = f(min_x + i * dx, y1);
    for (int ix = 0; ix < resolution; ++ix) {
      const double x0 = min_x + ix * dx;
      const double x1 = x0 + dx;
      const double fa = row0[ix], fb = row0[ix + 1];
      const double fc = row1[ix + 1], fd = row1[ix];
      const int code = (fa < 0 ? 1 : 0) | (fb < 0 ? 2 : 0) | (fc < 0 ? 4 : 0) |
                       (fd < 0 ? 8 : 0);
      if (code == 0 || code == 15) continue;

      // Interpolated crossings on the four cell edges.
      Eigen::Vector2d bottom(lerp(x0, x1, fa, fb), y0);
      Eigen::Vector2d right(x1, lerp(y0, y1, fb, fc));
      Eigen::Vector2d top(lerp(x0, x1, fd, fc), y1);
      Eigen::Vector2d left(x0, lerp(y0, y1, fa, fd));

      switch (code) {
        case 1: case 14: segments.push_back({left, bottom}); break;
        case 2: case 13: segments.push_back({bottom, right}); break;
        case 3: case 12: segments.push_back({left, right}); break;
        case 4: case 11: segments.push_back({right, top}); break;
        case 6: case 9:  segments.push_back({bottom, top}); break;
        case 7: case 8:  segments.push_back({left, top}); break;
        case 5: case 10: {
          const double center = f(0.5 * (x0 + x1), 0.5 * (y0 + y1));
          const bool flip = (center < 0) == (code == 5);
          if (flip) {
            segments.push_back({left, top});
            segments.push_back({bottom, right});
          } else {
            segments.push_back({left, bottom});
            segments.push_back({right, top});
          }
          break;
        }
        default: break;
      }
    }
    std::swap(row0, row1);
  }
  return segments;
}

std::vector<Eigen::Vector2d> octagon_outline(const OctagonRegion& region) {
  if (region.dim() != 2) {
    throw std::invalid_argument("octagon_outline: need a planar region");
  }
  // Start from the bounding box and clip by the diagonal half-planes.
  const HyperBox bb = region.bounding_box();
  std::vector<Eigen::Vector2d> poly = {
      {bb.lower[0], bb.lower[1]},
      {bb.upper[0], bb.lower[1]},
      {bb.upper[0], bb.upper[1]},
      {bb.lower[0], bb.upper[1]}};
  const int m = OctagonRegion::direction_count(2);
  for (int k = 4; k < m; ++k) {
    const OctagonDirection d = OctagonRegion::direction_at(2, k);
    const double s = region.offset(k);
    std::vector<Eigen::Vector2d> clipped;
    const std::size_t count = poly.size();
    for (std::size_t a = 0; a < count; ++a) {
      const Eigen::Vector2d& p = poly[a];
      const Eigen::Vector2d& q = poly[(a + 1) % count];
      const double vp = d.si * p[0] + d.sj * p[1] - s;
      const double vq = d.si * q[0] + d.sj * q[1] - s;
      if (vp <= 0) clipped.push_back(p);
      if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
        const double t = vp / (vp - vq);
        clipped.push_back(p + t * (q - p));
      }
    }
    poly = std::move(clipped);
    if (poly.empty()) break;
  }
  return poly;
}

}  // namespace barrier_reach
