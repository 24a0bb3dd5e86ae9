#include "svg.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace toric::io {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 40.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fill_for(const std::string& key) {
  auto h = fnv1a(key);
  return "hsl(" + std::to_string(h % 360) + "," + std::to_string(45 + (h >> 16) % 30) + "%," +
         std::to_string(62 + (h >> 32) % 20) + "%)";
}

// Affine map of the (s,t) bounding box onto the viewport, t pointing up.
struct View {
  Rational s0, t0, span;
  double x(const RationalPoint& p) const { return kMargin + Rational((p[0] - s0) / span).get_d() * (kSize - 2 * kMargin); }
  double y(const RationalPoint& p) const {
    return kSize - kMargin - Rational((p[1] - t0) / span).get_d() * (kSize - 2 * kMargin);
  }
  std::string at(const RationalPoint& p) const { return fixed(x(p)) + "," + fixed(y(p)); }
};

View fit(const std::vector<RationalPoint>& pts) {
  View v{0, 0, 1};
  if (pts.empty()) return v;
  Rational s1 = pts[0][0], t1 = pts[0][1];
  v.s0 = s1;
  v.t0 = t1;
  for (const auto& p : pts) {
    if (p[0] < v.s0) v.s0 = p[0];
    if (p[1] < v.t0) v.t0 = p[1];
    if (p[0] > s1) s1 = p[0];
    if (p[1] > t1) t1 = p[1];
  }
  Rational ds = s1 - v.s0, dt = t1 - v.t0;
  v.span = ds > dt ? ds : dt;
  if (sgn(v.span) == 0) {
    v.span = 2;
    v.s0 -= 1;
    v.t0 -= 1;
  } else {
    // Center the shorter side.
    v.s0 -= (v.span - ds) / 2;
    v.t0 -= (v.span - dt) / 2;
  }
  return v;
}

std::string points_attr(const View& v, const std::vector<RationalPoint>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? " " : "") + v.at(pts[i]);
  return out;
}

}  // namespace

std::string render_svg(const GeographySlice& slice, const SvgOptions& options) {
  std::vector<RationalPoint> frame = slice.region_polygon;
  if (frame.empty()) frame = slice.effective;
  View v = fit(frame);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!options.title.empty()) os << "<title>" << escape(options.title) << "</title>\n";

  if (slice.region_polygon.size() >= 3)
    os << "<polygon points=\"" << points_attr(v, slice.region_polygon)
       << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";

  if (slice.effective.empty()) {
    os << "<text x=\"400.00\" y=\"400.00\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
       << "E(B) is empty</text>\n</svg>\n";
    return os.str();
  }

  os << "<g id=\"chambers\">\n";
  for (std::size_t c = 0; c < slice.chambers.size(); ++c) {
    const auto& ch = slice.chambers[c];
    if (ch.dim != 2) continue;
    os << "<polygon data-chamber=\"" << c << "\" points=\"" << points_attr(v, ch.closure) << "\" fill=\""
       << fill_for(ch.key) << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  }
  os << "</g>\n<g id=\"walls\">\n";
  for (const auto& st : slice.strata) {
    if (st.dim != 1) continue;
    const auto& a = slice.points[st.vertices[0]];
    const auto& b = slice.points[st.vertices[1]];
    os << "<line x1=\"" << fixed(v.x(a)) << "\" y1=\"" << fixed(v.y(a)) << "\" x2=\"" << fixed(v.x(b)) << "\" y2=\""
       << fixed(v.y(b)) << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
  }
  os << "</g>\n";

  // E(B) boundary in bold; a segment or a point when E(B) is degenerate.
  if (slice.effective.size() >= 3)
    os << "<polygon id=\"effective\" points=\"" << points_attr(v, slice.effective)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>\n";
  else if (slice.effective.size() == 2)
    os << "<polyline id=\"effective\" points=\"" << points_attr(v, slice.effective)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>\n";
  else
    os << "<circle id=\"effective\" cx=\"" << fixed(v.x(slice.effective[0])) << "\" cy=\""
       << fixed(v.y(slice.effective[0])) << "\" r=\"5\" fill=\"black\"/>\n";

  os << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
  for (std::size_t c = 0; c < slice.chambers.size(); ++c) {
    const auto& ch = slice.chambers[c];
    if (ch.dim != 2) continue;
    os << "<text x=\"" << fixed(v.x(ch.sample)) << "\" y=\"" << fixed(v.y(ch.sample)) << "\">C" << c << "</text>\n";
  }
  os << "</g>\n";

  if (options.arc) {
    os << "<g id=\"arc\">\n";
    for (auto e : options.arc->edges) {
      const auto& st = slice.strata[e];
      const auto& a = slice.points[st.vertices[0]];
      const auto& b = slice.points[st.vertices[1]];
      os << "<line x1=\"" << fixed(v.x(a)) << "\" y1=\"" << fixed(v.y(a)) << "\" x2=\"" << fixed(v.x(b))
         << "\" y2=\"" << fixed(v.y(b)) << "\" stroke=\"#c0392b\" stroke-width=\"6\" stroke-opacity=\"0.7\"/>\n";
    }
    std::size_t n = 0;
    for (auto p : options.arc->link_vertices) {
      const auto& q = slice.points[p];
      ++n;
      os << "<circle cx=\"" << fixed(v.x(q)) << "\" cy=\"" << fixed(v.y(q)) << "\" r=\"6\" fill=\"#c0392b\"/>\n";
      os << "<text x=\"" << fixed(v.x(q) + 10) << "\" y=\"" << fixed(v.y(q) - 10)
         << "\" font-family=\"sans-serif\" font-size=\"14\">D†" << n << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace toric::io
