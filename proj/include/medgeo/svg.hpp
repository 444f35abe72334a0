#pragma once
// Minimal deterministic SVG emission for debugging figures: point, polyline
// and circle layers with fixed formatting.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "medgeo/arclength.hpp"

namespace medgeo::svg {

struct Style {
  std::string stroke{"#000000"};
  std::string fill{"none"};
  double width{0.01};
  double opacity{1.0};
};

class Figure {
 public:
  explicit Figure(BBox box, double px_width = 800.0) : box_(box.inflated(0.05 * box.diag())) {
    scale_ = px_width / std::max(1e-12, box_.width());
    width_px_ = px_width;
    height_px_ = box_.height() * scale_;
  }

  void add_polyline(const std::vector<Point2>& pts, const Style& st, bool closed = false) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline points=\"";
    for (const auto& p : pts) os << fmt(px(p).x) << "," << fmt(px(p).y) << " ";
    if (closed) os << fmt(px(pts[0]).x) << "," << fmt(px(pts[0]).y);
    os << "\" fill=\"" << st.fill << "\" stroke=\"" << st.stroke << "\" stroke-width=\""
       << fmt(st.width * scale_) << "\" opacity=\"" << fmt(st.opacity) << "\"/>\n";
    body_ += os.str();
  }

  void add_curve(const ArcCurve& c, const Style& st) {
    std::vector<Point2> pts;
    pts.reserve(c.samples.size());
    for (const auto& s : c.samples) pts.push_back(s.p);
    add_polyline(pts, st, c.closed);
  }

  void add_points(const std::vector<Point2>& pts, const Style& st, double radius = 0.01) {
    std::ostringstream os;
    for (const auto& p : pts) {
      Point2 q = px(p);
      os << "<circle cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\""
         << fmt(radius * scale_) << "\" fill=\"" << st.stroke << "\" opacity=\""
         << fmt(st.opacity) << "\"/>\n";
    }
    body_ += os.str();
  }

  void add_circle(const Point2& c, double r, const Style& st) {
    Point2 q = px(c);
    std::ostringstream os;
    os << "<circle cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\"" << fmt(r * scale_)
       << "\" fill=\"" << st.fill << "\" stroke=\"" << st.stroke << "\" stroke-width=\""
       << fmt(st.width * scale_) << "\" opacity=\"" << fmt(st.opacity) << "\"/>\n";
    body_ += os.str();
  }

  std::string str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_px_)
       << "\" height=\"" << fmt(height_px_) << "\" viewBox=\"0 0 " << fmt(width_px_) << " "
       << fmt(height_px_) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
       << body_ << "</svg>\n";
    return os.str();
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Err::IOFailure, "cannot open " + path);
    out << str();
    if (!out) throw Error(Err::IOFailure, "write failed for " + path);
  }

 private:
  // y axis flipped so the figure reads like the plane
  Point2 px(const Point2& p) const {
    return {(p.x - box_.lo.x) * scale_, (box_.hi.y - p.y) * scale_};
  }
  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }

  BBox box_;
  double scale_{1.0};
  double width_px_{800};
  double height_px_{600};
  std::string body_;
};

}  // namespace medgeo::svg
