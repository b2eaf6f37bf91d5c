#include "gradflow/diagram.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace gradflow {

namespace {

constexpr std::array<const char*, kNumVertexTypes> kVertexTypeNames = {
    "iSource", "iSink", "iSaddle", "bSource", "bSink", "bSaddleRep", "bSaddleAtt"};

[[noreturn]] void malformed(const std::string& msg) {
  throw DiagramError(DiagramErrorKind::Malformed, "malformed diagram: " + msg);
}

}  // namespace

const char* to_string(VertexType t) {
  return kVertexTypeNames[static_cast<int>(t)];
}

std::optional<VertexType> parse_vertex_type(std::string_view s) {
  for (int i = 0; i < kNumVertexTypes; ++i) {
    if (s == kVertexTypeNames[i]) return static_cast<VertexType>(i);
  }
  return std::nullopt;
}

VertexType reversed(VertexType t) {
  switch (t) {
    case VertexType::ISource: return VertexType::ISink;
    case VertexType::ISink: return VertexType::ISource;
    case VertexType::ISaddle: return VertexType::ISaddle;
    case VertexType::BSource: return VertexType::BSink;
    case VertexType::BSink: return VertexType::BSource;
    case VertexType::BSaddleRep: return VertexType::BSaddleAtt;
    case VertexType::BSaddleAtt: return VertexType::BSaddleRep;
  }
  return t;
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::BoundaryArc: return "boundary";
    case EdgeKind::Separatrix: return "sep";
    case EdgeKind::Connection: return "conn";
  }
  return "?";
}

const char* to_string(Surface s) {
  switch (s) {
    case Surface::Disk: return "disk";
    case Surface::Annulus: return "annulus";
    case Surface::Pants: return "pants";
  }
  return "?";
}

std::optional<Surface> parse_surface(std::string_view s) {
  if (s == "disk") return Surface::Disk;
  if (s == "annulus") return Surface::Annulus;
  if (s == "pants") return Surface::Pants;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SeparatrixDiagram

SeparatrixDiagram::SeparatrixDiagram(CombMap map, std::vector<VertexType> vtypes,
                                     std::vector<EdgeRecord> edges,
                                     std::vector<int> hole_faces,
                                     std::optional<int> codim) {
  if (static_cast<int>(edges.size()) != map.num_edges()) {
    malformed("expected " + std::to_string(map.num_edges()) + " edge records, got " +
              std::to_string(edges.size()));
  }
  const int n = map.num_darts();
  std::vector<EdgeKind> kind(n);
  std::vector<char> out(n, 0);
  for (int e = 0; e < map.num_edges(); ++e) {
    const auto [a, b] = map.edge(e);
    if (edges[e].origin != a && edges[e].origin != b) {
      malformed("origin dart " + std::to_string(edges[e].origin) +
                " does not belong to edge " + std::to_string(e));
    }
    kind[a] = kind[b] = edges[e].kind;
    out[edges[e].origin] = 1;
  }
  std::vector<char> hole(n, 0);
  for (int f : hole_faces) {
    if (f < 0 || f >= map.num_faces()) malformed("hole face " + std::to_string(f) + " out of range");
    for (Dart d : map.faces()[f]) hole[d] = 1;
  }
  int c = 0;
  for (int e = 0; e < map.num_edges(); ++e) c += edges[e].kind == EdgeKind::Connection;
  *this = from_darts(std::move(map), std::move(vtypes), std::move(kind), std::move(out),
                     std::move(hole), codim.value_or(std::min(c, 1)));
}

SeparatrixDiagram SeparatrixDiagram::from_darts(CombMap map, std::vector<VertexType> vtypes,
                                                std::vector<EdgeKind> dart_kind,
                                                std::vector<char> dart_out,
                                                std::vector<char> dart_hole, int codim) {
  const int n = map.num_darts();
  if (static_cast<int>(vtypes.size()) != map.num_vertices()) {
    malformed("expected " + std::to_string(map.num_vertices()) + " vertex types, got " +
              std::to_string(vtypes.size()));
  }
  if (static_cast<int>(dart_kind.size()) != n || static_cast<int>(dart_out.size()) != n ||
      static_cast<int>(dart_hole.size()) != n) {
    malformed("per-dart arrays have wrong size");
  }
  for (Dart d = 0; d < n; ++d) {
    const Dart p = map.alpha(d);
    if (dart_kind[d] != dart_kind[p]) malformed("edge kinds differ on dart " + std::to_string(d));
    if ((dart_out[d] != 0) == (dart_out[p] != 0)) {
      malformed("edge of dart " + std::to_string(d) + " needs exactly one origin");
    }
  }
  SeparatrixDiagram sd;
  for (int f = 0; f < map.num_faces(); ++f) {
    const auto& cyc = map.faces()[f];
    const bool flagged = dart_hole[cyc.front()] != 0;
    for (Dart d : cyc) {
      if ((dart_hole[d] != 0) != flagged) malformed("hole flags split face " + std::to_string(f));
    }
    if (flagged) sd.holes_.push_back(f);
  }
  sd.map_ = std::move(map);
  sd.vtypes_ = std::move(vtypes);
  sd.dart_kind_ = std::move(dart_kind);
  sd.dart_out_ = std::move(dart_out);
  sd.dart_hole_ = std::move(dart_hole);
  sd.codim_ = codim;
  return sd;
}

EdgeRecord SeparatrixDiagram::edge(int e) const {
  const auto [a, b] = map_.edge(e);
  return EdgeRecord{dart_kind_[a], is_out(a) ? a : b};
}

EdgeColor SeparatrixDiagram::color(int e) const {
  const EdgeRecord r = edge(e);
  switch (r.kind) {
    case EdgeKind::BoundaryArc: return EdgeColor::Boundary;
    case EdgeKind::Connection: return EdgeColor::Black;
    case EdgeKind::Separatrix:
      // Out of a saddle: unstable (green); into a saddle: stable (red).
      return is_saddle(type_at(r.origin)) ? EdgeColor::Green : EdgeColor::Red;
  }
  return EdgeColor::Boundary;
}

bool SeparatrixDiagram::is_hole_face(int f) const {
  return std::binary_search(holes_.begin(), holes_.end(), f);
}

int SeparatrixDiagram::num_connections() const {
  int c = 0;
  for (int e = 0; e < num_edges(); ++e) c += edge(e).kind == EdgeKind::Connection;
  return c;
}

SeparatrixDiagram SeparatrixDiagram::relabel(std::span<const Dart> perm) const {
  CombMap m = map_.relabel(perm);
  const int n = map_.num_darts();
  std::vector<Dart> inv(n);
  for (Dart d = 0; d < n; ++d) inv[perm[d]] = d;
  std::vector<VertexType> vt(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    vt[v] = vtypes_[map_.vertex_of(inv[m.vertices()[v].front()])];
  }
  std::vector<EdgeKind> kind(n);
  std::vector<char> out(n), hole(n);
  for (Dart d = 0; d < n; ++d) {
    kind[perm[d]] = dart_kind_[d];
    out[perm[d]] = dart_out_[d];
    hole[perm[d]] = dart_hole_[d];
  }
  return from_darts(std::move(m), std::move(vt), std::move(kind), std::move(out),
                    std::move(hole), codim_);
}

bool operator==(const SeparatrixDiagram& a, const SeparatrixDiagram& b) {
  return a.map_ == b.map_ && a.vtypes_ == b.vtypes_ && a.dart_kind_ == b.dart_kind_ &&
         a.dart_out_ == b.dart_out_ && a.dart_hole_ == b.dart_hole_ && a.codim_ == b.codim_;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::to_string() const {
  if (ok) return "ok\n";
  std::ostringstream os;
  for (const auto& v : violations) os << v.rule << " " << v.location << "\n";
  return os.str();
}

namespace {

struct Checker {
  const SeparatrixDiagram& d;
  ValidationReport report;

  void flag(const char* rule, std::string loc) {
    report.ok = false;
    report.violations.push_back({rule, std::move(loc)});
  }

  static std::string vname(int v) { return "vertex " + std::to_string(v); }
  static std::string fname(int f) { return "face " + std::to_string(f); }
  static std::string ename(int e) { return "edge " + std::to_string(e); }

  void v1() {
    const CombMap& m = d.map();
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (m.degree(v) < 1) flag("V1", vname(v));
    }
  }

  void v2() {
    const CombMap& m = d.map();
    const int h = d.num_holes();
    if (h < 1 || h > 3) flag("V2", "hole count " + std::to_string(h));
    for (int f : d.holes()) {
      for (Dart x : m.faces()[f]) {
        if (d.kind_at(x) != EdgeKind::BoundaryArc) {
          flag("V2", fname(f) + " contains non-boundary dart " + std::to_string(x));
          break;
        }
      }
    }
    for (int e = 0; e < m.num_edges(); ++e) {
      const auto [a, b] = m.edge(e);
      if (d.kind_at(a) != EdgeKind::BoundaryArc) continue;
      if (d.in_hole(a) == d.in_hole(b)) flag("V2", ename(e) + " not on exactly one hole");
    }
  }

  void v3() {
    const int chi = d.map().euler_characteristic();
    if (chi != 2) flag("V3", "euler characteristic " + std::to_string(chi));
  }

  void v4() {
    const CombMap& m = d.map();
    for (int v = 0; v < m.num_vertices(); ++v) {
      const VertexType t = d.vtype(v);
      const auto& rot = m.vertices()[v];
      int bnd = 0, bnd_out = 0, inner = 0, inner_out = 0, sep = 0;
      for (Dart x : rot) {
        if (d.kind_at(x) == EdgeKind::BoundaryArc) {
          ++bnd;
          bnd_out += d.is_out(x);
        } else {
          ++inner;
          inner_out += d.is_out(x);
          sep += d.kind_at(x) == EdgeKind::Separatrix;
        }
      }
      bool ok = true;
      switch (t) {
        case VertexType::ISource: ok = bnd == 0 && inner >= 1 && inner_out == inner && sep == inner; break;
        case VertexType::ISink: ok = bnd == 0 && inner >= 1 && inner_out == 0 && sep == inner; break;
        case VertexType::ISaddle: ok = bnd == 0 && inner == 4 && inner_out == 2; break;
        case VertexType::BSource: ok = bnd == 2 && bnd_out == 2 && inner_out == inner && sep == inner; break;
        case VertexType::BSink: ok = bnd == 2 && bnd_out == 0 && inner_out == 0 && sep == inner; break;
        case VertexType::BSaddleRep: ok = bnd == 2 && bnd_out == 2 && inner == 1 && inner_out == 0; break;
        case VertexType::BSaddleAtt: ok = bnd == 2 && bnd_out == 0 && inner == 1 && inner_out == 1; break;
      }
      if (!ok) {
        flag("V4", vname(v) + " (" + to_string(t) + ") local pattern");
        continue;
      }
      if (bnd == 2) {
        // The two boundary darts must be rotation-adjacent around the hole corner.
        bool adjacent = false;
        for (Dart x : rot) {
          const Dart y = m.sigma(x);
          if (d.kind_at(x) == EdgeKind::BoundaryArc && d.kind_at(y) == EdgeKind::BoundaryArc &&
              (x != y) && d.in_hole(y)) {
            adjacent = true;
          }
        }
        if (!adjacent) flag("V4", vname(v) + " boundary darts not around a hole corner");
      }
    }
    for (int e = 0; e < m.num_edges(); ++e) {
      const auto [a, b] = m.edge(e);
      const VertexType ta = d.type_at(a), tb = d.type_at(b);
      bool ok = true;
      switch (d.kind_at(a)) {
        case EdgeKind::BoundaryArc: ok = is_boundary(ta) && is_boundary(tb); break;
        case EdgeKind::Separatrix: ok = is_saddle(ta) != is_saddle(tb); break;
        case EdgeKind::Connection: ok = is_saddle(ta) && is_saddle(tb); break;
      }
      if (!ok) flag("V4", ename(e) + " endpoint types");
    }
  }

  void v5() {
    const CombMap& m = d.map();
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (d.vtype(v) != VertexType::ISaddle) continue;
      for (Dart x : m.vertices()[v]) {
        if (d.is_out(x) == d.is_out(m.sigma(x))) {
          flag("V5", vname(v));
          break;
        }
      }
    }
  }

  void v6() {
    const CombMap& m = d.map();
    for (int f : d.holes()) {
      const auto& cyc = m.faces()[f];
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const Dart x = cyc[i], y = cyc[(i + 1) % cyc.size()];
        if (d.is_out(x) == d.is_out(y)) {
          flag("V6", fname(f));
          break;
        }
      }
    }
  }

  void v7() {
    const CombMap& m = d.map();
    for (int f = 0; f < m.num_faces(); ++f) {
      if (d.is_hole_face(f)) continue;
      const FaceWord w = face_word(d, f);
      int bf = 0, fb = 0;
      bool bad_corner = false;
      const auto& s = w.steps;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const FaceStep& cur = s[i];
        const FaceStep& next = s[(i + 1) % s.size()];
        if (cur.step == Step::F && next.step == Step::B) {
          ++fb;
          bad_corner |= !is_sink_type(cur.corner_type);
        } else if (cur.step == Step::B && next.step == Step::F) {
          ++bf;
          bad_corner |= !is_source_type(cur.corner_type);
        }
      }
      if (fb != 1 || bf != 1 || bad_corner) flag("V7", fname(f));
    }
  }

  void v8() {
    const CombMap& m = d.map();
    const int c = d.num_connections();
    if ((d.codim() != 0 && d.codim() != 1) || c != d.codim()) {
      flag("V8", std::to_string(c) + " connection edges for codimension " +
                     std::to_string(d.codim()));
    }
    for (int e = 0; e < m.num_edges(); ++e) {
      const auto [a, b] = m.edge(e);
      if (d.kind_at(a) != EdgeKind::Connection) continue;
      const int u = m.vertex_of(a), w = m.vertex_of(b);
      if (!is_boundary(d.vtype(u)) || !is_boundary(d.vtype(w))) continue;
      for (Dart x : m.vertices()[u]) {
        if (d.kind_at(x) == EdgeKind::BoundaryArc && m.vertex_of(m.alpha(x)) == w) {
          flag("V8", ename(e) + " joins boundary saddles adjacent on a hole");
          break;
        }
      }
    }
  }

  void v9() {
    const int want = 2 * (2 - d.num_holes());
    const int got = doubled_index_sum(d);
    if (got != want) {
      flag("V9", "doubled index sum " + std::to_string(got) + ", expected " + std::to_string(want));
    }
  }
};

}  // namespace

ValidationReport validate(const SeparatrixDiagram& d) {
  Checker c{d, {}};
  c.v1();
  c.v2();
  c.v3();
  c.v4();
  c.v5();
  c.v6();
  c.v7();
  c.v8();
  c.v9();
  return std::move(c.report);
}

int doubled_index_sum(const SeparatrixDiagram& d) {
  int s = 0;
  for (VertexType t : d.vertex_types()) s += doubled_index(t);
  return s;
}

SeparatrixDiagram reverse_flow(const SeparatrixDiagram& d) {
  const int n = d.map().num_darts();
  std::vector<VertexType> vt(d.vertex_types());
  for (auto& t : vt) t = reversed(t);
  std::vector<EdgeKind> kind(n);
  std::vector<char> out(n), hole(n);
  for (Dart x = 0; x < n; ++x) {
    kind[x] = d.kind_at(x);
    out[x] = !d.is_out(x);
    hole[x] = d.in_hole(x);
  }
  return SeparatrixDiagram::from_darts(d.map(), std::move(vt), std::move(kind), std::move(out),
                                       std::move(hole), d.codim());
}

SeparatrixDiagram mirror(const SeparatrixDiagram& d) {
  const CombMap& m = d.map();
  const int n = m.num_darts();
  CombMap mm = m.mirror();
  // sigma and sigma^-1 have the same orbits, so vertex numbering is unchanged.
  std::vector<EdgeKind> kind(n);
  std::vector<char> out(n), hole(n);
  for (Dart x = 0; x < n; ++x) {
    kind[x] = d.kind_at(x);
    out[x] = d.is_out(x);
    // alpha carries phi-orbits to orbits of sigma^-1 alpha.
    hole[x] = d.in_hole(m.alpha(x));
  }
  return SeparatrixDiagram::from_darts(std::move(mm), d.vertex_types(), std::move(kind),
                                       std::move(out), std::move(hole), d.codim());
}

Surface surface_of(const SeparatrixDiagram& d) {
  const int h = d.num_holes();
  if (h < 1 || h > 3) {
    throw DiagramError(DiagramErrorKind::UnsupportedSurface,
                       "unsupported surface: " + std::to_string(h) + " holes");
  }
  return static_cast<Surface>(h - 1);
}

std::string FaceWord::letters() const {
  std::string s;
  for (const auto& st : steps) s += st.step == Step::F ? 'F' : 'B';
  return s;
}

int FaceWord::flips() const {
  int k = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    k += steps[i].step != steps[(i + 1) % steps.size()].step;
  }
  return k;
}

FaceWord face_word(const SeparatrixDiagram& d, int face) {
  const CombMap& m = d.map();
  if (face < 0 || face >= m.num_faces()) {
    throw DiagramError(DiagramErrorKind::Malformed, "no face " + std::to_string(face));
  }
  if (d.is_hole_face(face)) {
    throw DiagramError(DiagramErrorKind::IsHoleFace,
                       "face " + std::to_string(face) + " is a hole face");
  }
  FaceWord w;
  w.face = face;
  for (Dart x : m.faces()[face]) {
    const int v = m.vertex_of(m.alpha(x));
    w.steps.push_back({x, d.is_out(x) ? Step::F : Step::B, v, d.vtype(v)});
  }
  return w;
}

// ---------------------------------------------------------------------------
// DiagramBuilder

int DiagramBuilder::vertex(VertexType t) {
  types_.push_back(t);
  rotation_.emplace_back();
  return static_cast<int>(types_.size()) - 1;
}

std::pair<Dart, Dart> DiagramBuilder::edge(int from, int to, EdgeKind kind) {
  const Dart a = static_cast<Dart>(2 * pairs_.size());
  const Dart b = a + 1;
  pairs_.emplace_back(a, b);
  kinds_.push_back(kind);
  rotation_.at(from).push_back(a);
  rotation_.at(to).push_back(b);
  return {a, b};
}

void DiagramBuilder::set_rotation(int v, std::vector<Dart> ccw) {
  rotation_.at(v) = std::move(ccw);
}

void DiagramBuilder::hole(Dart d) { hole_darts_.push_back(d); }

SeparatrixDiagram DiagramBuilder::build(std::optional<int> codim) const {
  CombMap m = CombMap::build(rotation_, pairs_);
  std::vector<VertexType> vt(m.num_vertices());
  for (std::size_t i = 0; i < rotation_.size(); ++i) {
    vt[m.vertex_of(rotation_[i].front())] = types_[i];
  }
  std::vector<EdgeRecord> edges(m.num_edges());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    // Origin is always the first dart of the pair (the `from` side).
    edges[m.edge_of(pairs_[i].first)] = EdgeRecord{kinds_[i], pairs_[i].first};
  }
  std::vector<int> holes;
  for (Dart x : hole_darts_) holes.push_back(m.face_of(x));
  std::sort(holes.begin(), holes.end());
  holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
  return SeparatrixDiagram(std::move(m), std::move(vt), std::move(edges), std::move(holes), codim);
}

}  // namespace gradflow
