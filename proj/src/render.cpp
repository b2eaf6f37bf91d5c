#include "gradflow/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

namespace gradflow {

namespace {

const char* dot_shape(VertexType t) {
  if (is_source_type(t)) return "triangle";
  if (is_sink_type(t)) return "invtriangle";
  return "box";
}

const char* edge_color(EdgeColor c) {
  switch (c) {
    case EdgeColor::Boundary: return "gray30";
    case EdgeColor::Red: return "red";
    case EdgeColor::Green: return "green";
    case EdgeColor::Black: return "black";
  }
  return "gray30";
}

const char* svg_color(EdgeColor c) {
  switch (c) {
    case EdgeColor::Boundary: return "#333333";
    case EdgeColor::Red: return "#d62728";
    case EdgeColor::Green: return "#2ca02c";
    case EdgeColor::Black: return "#000000";
  }
  return "#333333";
}

// Hole index per vertex, -1 for interior vertices.
std::vector<int> hole_of_vertex(const SeparatrixDiagram& d) {
  const CombMap& m = d.map();
  std::vector<int> h(m.num_vertices(), -1);
  for (int k = 0; k < d.num_holes(); ++k) {
    for (Dart x : m.faces()[d.holes()[k]]) h[m.vertex_of(x)] = k;
  }
  return h;
}

struct Point {
  double x = 0, y = 0;
};

std::vector<Point> layout(const SeparatrixDiagram& d) {
  const CombMap& m = d.map();
  const int nv = m.num_vertices(), nh = d.num_holes();
  std::vector<Point> pos(nv);
  std::vector<char> fixed(nv, 0);
  for (int k = 0; k < nh; ++k) {
    Point c;
    double r = 1.0;
    if (k > 0) {
      r = nh == 2 ? 0.3 : 0.2;
      const double t = 2 * std::numbers::pi * (k - 1) / (nh - 1);
      c = nh == 2 ? Point{} : Point{0.5 * std::cos(t), 0.5 * std::sin(t)};
    }
    std::vector<int> ring;
    for (Dart x : m.faces()[d.holes()[k]]) ring.push_back(m.vertex_of(x));
    const int len = static_cast<int>(ring.size());
    for (int i = 0; i < len; ++i) {
      // The outer hole is walked clockwise as seen from the drawing.
      const double t = (k == 0 ? -1 : 1) * 2 * std::numbers::pi * i / len + std::numbers::pi / 2;
      pos[ring[i]] = {c.x + r * std::cos(t), c.y + r * std::sin(t)};
      fixed[ring[i]] = 1;
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (!fixed[v]) pos[v] = {0.1 * std::cos(1.7 * v + 0.3), 0.1 * std::sin(1.7 * v + 0.3)};
  }
  for (int it = 0; it < 400; ++it) {
    for (int v = 0; v < nv; ++v) {
      if (fixed[v]) continue;
      Point s;
      for (Dart x : m.vertices()[v]) {
        const Point& q = pos[m.vertex_of(m.alpha(x))];
        s.x += q.x;
        s.y += q.y;
      }
      const double deg = m.degree(v);
      Point next{s.x / deg, s.y / deg};
      // Keep vertices with the same neighbours apart.
      for (int w = 0; w < nv; ++w) {
        if (w == v) continue;
        const double dx = next.x - pos[w].x, dy = next.y - pos[w].y;
        const double dist = std::hypot(dx, dy);
        if (dist < 0.15) {
          const double push = (0.15 - dist) / 2;
          const double ux = dist > 1e-9 ? dx / dist : std::cos(v), uy = dist > 1e-9 ? dy / dist : std::sin(v);
          next.x += push * ux;
          next.y += push * uy;
        }
      }
      pos[v] = next;
    }
  }
  return pos;
}

void svg_glyph(std::ostream& os, VertexType t, double x, double y) {
  const char* fill = is_boundary(t) ? "#bbbbbb" : "#ffffff";
  const double s = 8;
  os << "  <polygon fill=\"" << fill << "\" stroke=\"#000000\" points=\"";
  if (is_source_type(t)) {
    os << x << "," << y - s << " " << x - s << "," << y + s * 0.8 << " " << x + s << "," << y + s * 0.8;
  } else if (is_sink_type(t)) {
    os << x << "," << y + s << " " << x - s << "," << y - s * 0.8 << " " << x + s << "," << y - s * 0.8;
  } else {
    const double h = s * 0.75;
    os << x - h << "," << y - h << " " << x + h << "," << y - h << " " << x + h << "," << y + h << " "
       << x - h << "," << y + h;
  }
  os << "\"/>\n";
}

}  // namespace

std::string to_dot(const SeparatrixDiagram& d, const std::string& name) {
  const CombMap& m = d.map();
  const auto hole = hole_of_vertex(d);
  std::ostringstream os;
  auto node = [&](int v, const char* indent) {
    const VertexType t = d.vtype(v);
    os << indent << "v" << v << " [label=\"" << v << "\", xlabel=\"" << to_string(t)
       << "\", shape=" << dot_shape(t);
    if (is_boundary(t)) os << ", style=filled, fillcolor=lightgrey";
    os << "];\n";
  };
  auto edge = [&](int e, const char* indent) {
    const EdgeRecord r = d.edge(e);
    const int u = m.vertex_of(r.origin), w = m.vertex_of(m.alpha(r.origin));
    os << indent << "v" << u << " -> v" << w << " [color=" << edge_color(d.color(e));
    if (r.kind == EdgeKind::BoundaryArc) os << ", style=bold, penwidth=2.5";
    os << "];\n";
  };

  os << "digraph " << name << " {\n";
  os << "  graph [start=1];\n";
  os << "  node [fontsize=10];\n";
  for (int k = 0; k < d.num_holes(); ++k) {
    os << "  subgraph cluster_hole" << k << " {\n";
    os << "    label=\"hole " << k << "\";\n";
    os << "    style=dashed;\n";
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (hole[v] == k) node(v, "    ");
    }
    for (int e = 0; e < m.num_edges(); ++e) {
      const auto [a, b] = m.edge(e);
      if (d.kind_at(a) == EdgeKind::BoundaryArc && hole[m.vertex_of(a)] == k) edge(e, "    ");
    }
    os << "  }\n";
  }
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (hole[v] < 0) node(v, "  ");
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (d.kind_at(m.edge(e).first) != EdgeKind::BoundaryArc) edge(e, "  ");
  }
  os << "}\n";
  return os.str();
}

std::string to_svg(const SeparatrixDiagram& d) {
  const CombMap& m = d.map();
  const auto pos = layout(d);
  constexpr double kSize = 480, kScale = 200;
  auto px = [&](const Point& p) { return Point{kSize / 2 + kScale * p.x, kSize / 2 - kScale * p.y}; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  os << "  <defs>\n";
  for (EdgeColor c : {EdgeColor::Boundary, EdgeColor::Red, EdgeColor::Green, EdgeColor::Black}) {
    os << "    <marker id=\"arrow" << static_cast<int>(c)
       << "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
          "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\""
       << svg_color(c) << "\"/></marker>\n";
  }
  os << "  </defs>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Inner holes are shaded.
  for (int k = 1; k < d.num_holes(); ++k) {
    os << "  <polygon fill=\"#e6e6e6\" stroke=\"none\" points=\"";
    for (Dart x : m.faces()[d.holes()[k]]) {
      const Point p = px(pos[m.vertex_of(x)]);
      os << p.x << "," << p.y << " ";
    }
    os << "\"/>\n";
  }

  std::map<std::pair<int, int>, std::vector<int>> bundles;
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge(e);
    const int u = m.vertex_of(a), w = m.vertex_of(b);
    bundles[{std::min(u, w), std::max(u, w)}].push_back(e);
  }
  for (const auto& [key, es] : bundles) {
    const int cnt = static_cast<int>(es.size());
    for (int i = 0; i < cnt; ++i) {
      const int e = es[i];
      const EdgeRecord r = d.edge(e);
      const Point p = px(pos[m.vertex_of(r.origin)]);
      const Point q = px(pos[m.vertex_of(m.alpha(r.origin))]);
      // Offsets are measured in the (min, max) frame so bundles fan out.
      const Point lo = px(pos[key.first]), hi = px(pos[key.second]);
      const double dx = hi.x - lo.x, dy = hi.y - lo.y, len = std::max(std::hypot(dx, dy), 1e-9);
      const double off = (i - (cnt - 1) / 2.0) * 0.35 * len;
      const Point c{(p.x + q.x) / 2 - dy / len * off, (p.y + q.y) / 2 + dx / len * off};
      const EdgeColor col = d.color(e);
      os << "  <path d=\"M" << p.x << "," << p.y << " Q" << c.x << "," << c.y << " " << q.x << ","
         << q.y << "\" fill=\"none\" stroke=\"" << svg_color(col) << "\" stroke-width=\""
         << (col == EdgeColor::Boundary ? 3.0 : 1.5) << "\" marker-end=\"url(#arrow"
         << static_cast<int>(col) << ")\"/>\n";
    }
  }
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Point p = px(pos[v]);
    svg_glyph(os, d.vtype(v), p.x, p.y);
    os << "  <text x=\"" << p.x + 10 << "\" y=\"" << p.y - 10
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << v << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gradflow
