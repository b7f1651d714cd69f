#include "esl/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace esl {

namespace {

struct V {
  double x, y;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

// Keeps the part of `poly` where a*x + b*y + c >= 0.
std::vector<V> clip(const std::vector<V>& poly, double a, double b, double c) {
  std::vector<V> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const V& p = poly[i];
    const V& q = poly[(i + 1) % n];
    double fp = a * p.x + b * p.y + c, fq = a * q.x + b * q.y + c;
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) {
      double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const LineFamily& f, const SvgOptions& opts) {
  std::vector<V> pts;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      PointR p = intersect(f[i], f[j]);
      pts.push_back({p.x.get_d(), p.y.get_d()});
    }
  for (const auto& p : opts.points) pts.push_back({p.x.get_d(), p.y.get_d()});
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].x;
    y0 = y1 = pts[0].y;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  if (x1 - x0 < 1e-9) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-9) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  double mx = (x1 - x0) / 10, my = (y1 - y0) / 10;
  x0 -= mx;
  x1 += mx;
  y0 -= my;
  y1 += my;
  const double scale = opts.width / (x1 - x0);
  const double height = (y1 - y0) * scale;
  auto sx = [&](double x) { return (x - x0) * scale; };
  auto sy = [&](double y) { return (y1 - y) * scale; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opts.width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(opts.width) << " " << num(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(opts.width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";

  const std::vector<V> box{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  for (const auto& h : opts.faces) {
    std::vector<V> poly = box;
    for (std::size_t t = 0; t < h.subset.size() && !poly.empty(); ++t) {
      const Line& l = f[static_cast<std::size_t>(h.subset[t])];
      // sign * (y - m x - c) >= 0
      double s = h.signs[t];
      poly = clip(poly, -s * l.m.get_d(), s, -s * l.c.get_d());
    }
    if (poly.size() < 3) continue;
    out << "<polygon fill=\"" << h.fill << "\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) out << (i ? " " : "") << num(sx(poly[i].x)) << "," << num(sy(poly[i].y));
    out << "\"/>\n";
  }

  for (std::size_t i = 0; i < f.size(); ++i) {
    double m = f[i].m.get_d(), c = f[i].c.get_d();
    // Clip y = m x + c to the box.
    double ta = x0, tb = x1;
    if (m == 0 && (c < y0 || c > y1)) continue;
    if (m != 0) {
      double xa = (y0 - c) / m, xb = (y1 - c) / m;
      if (xa > xb) std::swap(xa, xb);
      ta = std::max(ta, xa);
      tb = std::min(tb, xb);
    }
    if (ta > tb) continue;
    bool bold = std::count(opts.emphasized_lines.begin(), opts.emphasized_lines.end(), static_cast<int>(i)) > 0;
    out << "<line x1=\"" << num(sx(ta)) << "\" y1=\"" << num(sy(m * ta + c)) << "\" x2=\"" << num(sx(tb))
        << "\" y2=\"" << num(sy(m * tb + c)) << "\" stroke=\"" << (bold ? "#1d3557" : "#457b9d")
        << "\" stroke-width=\"" << (bold ? "2.5" : "1") << "\" data-line=\"" << i << "\"/>\n";
  }
  for (const auto& p : opts.points)
    out << "<circle cx=\"" << num(sx(p.x.get_d())) << "\" cy=\"" << num(sy(p.y.get_d()))
        << "\" r=\"3\" fill=\"#e63946\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace esl
