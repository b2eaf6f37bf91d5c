#include "gradflow/sdg_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace gradflow {

namespace {

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view s, int line, const char* what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::optional<EdgeKind> parse_kind(std::string_view s) {
  if (s == "boundary") return EdgeKind::BoundaryArc;
  if (s == "sep") return EdgeKind::Separatrix;
  if (s == "conn") return EdgeKind::Connection;
  return std::nullopt;
}

struct EdgeLine {
  Dart a, b, origin;
  EdgeKind kind;
  int line;
};

}  // namespace

SeparatrixDiagram parse_sdg(std::string_view text) {
  std::optional<Surface> surface;
  std::optional<int> codim;
  std::map<int, VertexType> types;
  std::map<int, std::pair<std::vector<Dart>, int>> rots;
  std::vector<EdgeLine> edges;
  std::vector<std::pair<Dart, int>> holes;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto w = split_words(line);
    if (w.empty()) continue;
    const std::string_view key = w[0];
    if (key == "surface") {
      if (w.size() != 2) throw ParseError(line_no, "expected: surface <disk|annulus|pants>");
      if (surface) throw ParseError(line_no, "duplicate surface line");
      surface = parse_surface(w[1]);
      if (!surface) throw ParseError(line_no, "unknown surface '" + std::string(w[1]) + "'");
    } else if (key == "codim") {
      if (w.size() != 2) throw ParseError(line_no, "expected: codim <n>");
      codim = parse_int(w[1], line_no, "codimension");
    } else if (key == "vertex") {
      if (w.size() != 3) throw ParseError(line_no, "expected: vertex <id> <type>");
      const int id = parse_int(w[1], line_no, "vertex id");
      const auto t = parse_vertex_type(w[2]);
      if (!t) throw ParseError(line_no, "unknown vertex type '" + std::string(w[2]) + "'");
      if (!types.emplace(id, *t).second) throw ParseError(line_no, "duplicate vertex " + std::to_string(id));
    } else if (key == "rot") {
      if (w.size() < 2 || w[1].empty() || w[1].back() != ':') {
        throw ParseError(line_no, "expected: rot <id>: <dart> ...");
      }
      const int id = parse_int(w[1].substr(0, w[1].size() - 1), line_no, "vertex id");
      std::vector<Dart> seq;
      for (std::size_t i = 2; i < w.size(); ++i) seq.push_back(parse_int(w[i], line_no, "dart"));
      if (!rots.emplace(id, std::pair(std::move(seq), line_no)).second) {
        throw ParseError(line_no, "duplicate rotation for vertex " + std::to_string(id));
      }
    } else if (key == "edge") {
      if (w.size() != 6 || w[4] != "from") {
        throw ParseError(line_no, "expected: edge <dart> <dart> <kind> from <dart>");
      }
      const auto kind = parse_kind(w[3]);
      if (!kind) throw ParseError(line_no, "unknown edge kind '" + std::string(w[3]) + "'");
      EdgeLine e{parse_int(w[1], line_no, "dart"), parse_int(w[2], line_no, "dart"),
                 parse_int(w[5], line_no, "dart"), *kind, line_no};
      if (e.origin != e.a && e.origin != e.b) {
        throw ParseError(line_no, "origin dart is not an end of the edge");
      }
      edges.push_back(e);
    } else if (key == "hole") {
      for (std::size_t i = 1; i < w.size(); ++i) {
        holes.emplace_back(parse_int(w[i], line_no, "dart"), line_no);
      }
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
    }
  }

  if (!surface) throw ParseError(line_no, "missing surface line");
  if (types.empty()) throw ParseError(line_no, "no vertices");
  for (const auto& [id, r] : rots) {
    if (!types.count(id)) throw ParseError(r.second, "rotation for undeclared vertex " + std::to_string(id));
  }
  std::vector<std::vector<Dart>> rotation;
  std::vector<VertexType> order;
  for (const auto& [id, t] : types) {
    auto it = rots.find(id);
    if (it == rots.end() || it->second.first.empty()) {
      throw ParseError(line_no, "vertex " + std::to_string(id) + " has no rotation");
    }
    rotation.push_back(it->second.first);
    order.push_back(t);
  }
  std::vector<std::pair<Dart, Dart>> pairing;
  for (const EdgeLine& e : edges) pairing.emplace_back(e.a, e.b);

  CombMap map = [&] {
    try {
      return CombMap::build(rotation, pairing);
    } catch (const MapError& err) {
      throw ParseError(line_no, std::string("inconsistent map: ") + err.what());
    }
  }();
  const int n = map.num_darts();
  std::vector<VertexType> vt(map.num_vertices());
  for (std::size_t i = 0; i < rotation.size(); ++i) vt[map.vertex_of(rotation[i].front())] = order[i];
  std::vector<EdgeRecord> recs(map.num_edges());
  for (const EdgeLine& e : edges) recs[map.edge_of(e.a)] = EdgeRecord{e.kind, e.origin};
  std::vector<int> hole_faces;
  for (const auto& [x, ln] : holes) {
    if (x >= n) throw ParseError(ln, "hole dart " + std::to_string(x) + " out of range");
    hole_faces.push_back(map.face_of(x));
  }
  std::sort(hole_faces.begin(), hole_faces.end());
  if (std::adjacent_find(hole_faces.begin(), hole_faces.end()) != hole_faces.end()) {
    throw ParseError(line_no, "two hole darts name the same face");
  }
  if (static_cast<int>(hole_faces.size()) != hole_count(*surface)) {
    throw ParseError(line_no, std::string(to_string(*surface)) + " needs " +
                                  std::to_string(hole_count(*surface)) + " hole(s), got " +
                                  std::to_string(hole_faces.size()));
  }
  try {
    return SeparatrixDiagram(std::move(map), std::move(vt), std::move(recs),
                             std::move(hole_faces), codim);
  } catch (const DiagramError& err) {
    throw ParseError(line_no, err.what());
  }
}

std::vector<SeparatrixDiagram> parse_sdg_all(std::string_view text) {
  std::vector<SeparatrixDiagram> out;
  std::size_t start = std::string_view::npos, pos = 0;
  auto flush = [&](std::size_t end) {
    if (start != std::string_view::npos) out.push_back(parse_sdg(text.substr(start, end - start)));
  };
  while (pos < text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const auto w = split_words(text.substr(pos, nl - pos));
    if (!w.empty() && w[0] == "surface") {
      flush(pos);
      start = pos;
    }
    pos = nl + 1;
  }
  flush(text.size());
  return out;
}

SeparatrixDiagram read_sdg_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sdg(ss.str());
}

std::string to_sdg(const SeparatrixDiagram& d, const std::vector<std::string>& comment) {
  const CombMap& m = d.map();
  std::ostringstream os;
  for (const auto& c : comment) os << "# " << c << "\n";
  os << "surface " << to_string(surface_of(d)) << "\n";
  if (d.codim() != std::min(d.num_connections(), 1)) os << "codim " << d.codim() << "\n";
  for (int v = 0; v < m.num_vertices(); ++v) os << "vertex " << v << " " << to_string(d.vtype(v)) << "\n";
  for (int v = 0; v < m.num_vertices(); ++v) {
    os << "rot " << v << ":";
    for (Dart x : m.vertices()[v]) os << " " << x;
    os << "\n";
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge(e);
    const EdgeRecord r = d.edge(e);
    os << "edge " << a << " " << b << " " << to_string(r.kind) << " from " << r.origin << "\n";
  }
  os << "hole";
  for (int f : d.holes()) os << " " << m.faces()[f].front();
  os << "\n";
  return os.str();
}

}  // namespace gradflow
