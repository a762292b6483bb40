#include "roadmap/render.hpp"

#include <cstdio>
#include <sstream>

#include "roadmap/geom.hpp"
#include "roadmap/smooth.hpp"

namespace rmg {

namespace {

class SvgWriter {
 public:
  SvgWriter(Point lo, Point hi, double scale, double margin)
      : lo_(lo), hi_(hi), scale_(scale), margin_(margin) {}

  double width() const { return (hi_.x - lo_.x + 2 * margin_) * scale_; }
  double height() const { return (hi_.y - lo_.y + 2 * margin_) * scale_; }
  double px(double x) const { return (x - lo_.x + margin_) * scale_; }
  double py(double y) const { return (hi_.y + margin_ - y) * scale_; }

  std::string coords(Point p) const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f", px(p.x), py(p.y));
    return buf;
  }

  std::string num(double v) const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }

 private:
  Point lo_, hi_;
  double scale_, margin_;
};

void polygon_points(std::ostringstream& os, const SvgWriter& w, const Polygon& poly) {
  for (size_t i = 0; i < poly.size(); ++i) {
    if (i) os << " ";
    os << w.coords(poly.vertices[i]);
  }
}

}  // namespace

std::string render_svg(const Environment& env, const Roadmap& rm, const RenderStyle& style) {
  if (!(style.scale > 0.0)) throw ValidationError("render scale must be positive");
  auto [lo, hi] = env.boundary.bounding_box();
  SvgWriter w(lo, hi, style.scale, style.margin);
  FreeSpace fs = env.free_space();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w.num(w.width())
     << "\" height=\"" << w.num(w.height()) << "\" viewBox=\"0 0 " << w.num(w.width()) << " "
     << w.num(w.height()) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  os << "<polygon points=\"";
  polygon_points(os, w, env.boundary);
  os << "\" fill=\"#fdfdfd\" stroke=\"none\"/>\n";

  if (style.draw_clearance) {
    // Clearance bands: outlines stroked at twice the expansion radius, so
    // the band reaches r_rob + d_s to each side of every wall.
    double band = 2.0 * fs.clearance_radius * style.scale;
    os << "<g fill=\"none\" stroke=\"#e0e0e0\" stroke-width=\"" << w.num(band)
       << "\" stroke-linejoin=\"round\">\n";
    os << "<polygon points=\"";
    polygon_points(os, w, env.boundary);
    os << "\"/>\n";
    for (const Polygon& h : fs.holes) {
      os << "<polygon points=\"";
      polygon_points(os, w, h);
      os << "\"/>\n";
    }
    os << "</g>\n";
  }

  for (const Polygon& h : fs.holes) {
    os << "<polygon points=\"";
    polygon_points(os, w, h);
    os << "\" fill=\"#9a9a9a\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  }
  // Non-obstacle footprints are traversable; outline only.
  for (const Station& st : env.stations) {
    if (st.is_obstacle || !st.footprint) continue;
    os << "<polygon points=\"";
    polygon_points(os, w, *st.footprint);
    os << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/>\n";
  }

  os << "<polygon points=\"";
  polygon_points(os, w, env.boundary);
  os << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2\"/>\n";

  if (style.draw_edges && !rm.edges.empty()) {
    os << "<g stroke=\"#2266cc\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\">\n";
    for (const RoadmapEdge& e : rm.edges) {
      Point a = rm.nodes[e.a].pos, b = rm.nodes[e.b].pos;
      os << "<line x1=\"" << w.num(w.px(a.x)) << "\" y1=\"" << w.num(w.py(a.y)) << "\" x2=\""
         << w.num(w.px(b.x)) << "\" y2=\"" << w.num(w.py(b.y)) << "\"/>\n";
    }
    os << "</g>\n";
  }

  if (style.smooth_overlay && !rm.edges.empty()) {
    os << "<g fill=\"none\" stroke=\"#cc5500\" stroke-width=\"1.5\">\n";
    for (const Blend& b : smooth_roadmap(rm, style.cut_distance, env.robot)) {
      os << "<path d=\"M " << w.coords(b.curve.p0) << " C " << w.coords(b.curve.p1) << " "
         << w.coords(b.curve.p2) << " " << w.coords(b.curve.p3) << "\"/>\n";
    }
    os << "</g>\n";
  }

  if (style.draw_nodes && !rm.nodes.empty()) {
    double r = 4.0;
    os << "<g stroke=\"#2266cc\" stroke-width=\"1.5\">\n";
    for (const RoadmapNode& n : rm.nodes) {
      if (n.kind == NodeKind::Station) continue;
      double x = w.px(n.pos.x), y = w.py(n.pos.y);
      os << "<line x1=\"" << w.num(x - r) << "\" y1=\"" << w.num(y - r) << "\" x2=\""
         << w.num(x + r) << "\" y2=\"" << w.num(y + r) << "\"/>\n";
      os << "<line x1=\"" << w.num(x - r) << "\" y1=\"" << w.num(y + r) << "\" x2=\""
         << w.num(x + r) << "\" y2=\"" << w.num(y - r) << "\"/>\n";
    }
    os << "</g>\n";
  }

  if (style.draw_stations) {
    double r = 5.0;
    os << "<g fill=\"#cc2222\">\n";
    for (const Point& p : env.interaction_points()) {
      double x = w.px(p.x), y = w.py(p.y);
      os << "<polygon points=\"" << w.num(x) << "," << w.num(y - r) << " " << w.num(x + r) << ","
         << w.num(y) << " " << w.num(x) << "," << w.num(y + r) << " " << w.num(x - r) << ","
         << w.num(y) << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace rmg
