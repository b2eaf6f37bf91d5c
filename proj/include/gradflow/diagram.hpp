#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gradflow/comb_map.hpp"

namespace gradflow {

enum class VertexType : std::uint8_t {
  ISource,
  ISink,
  ISaddle,
  BSource,
  BSink,
  BSaddleRep,  // boundary saddle: flow leaves along the boundary, one interior in-separatrix
  BSaddleAtt,  // boundary saddle: flow enters along the boundary, one interior out-separatrix
};
inline constexpr int kNumVertexTypes = 7;

const char* to_string(VertexType t);
std::optional<VertexType> parse_vertex_type(std::string_view s);

constexpr bool is_boundary(VertexType t) {
  return t == VertexType::BSource || t == VertexType::BSink ||
         t == VertexType::BSaddleRep || t == VertexType::BSaddleAtt;
}
constexpr bool is_saddle(VertexType t) {
  return t == VertexType::ISaddle || t == VertexType::BSaddleRep ||
         t == VertexType::BSaddleAtt;
}
constexpr bool is_node(VertexType t) { return !is_saddle(t); }
constexpr bool is_source_type(VertexType t) {
  return t == VertexType::ISource || t == VertexType::BSource;
}
constexpr bool is_sink_type(VertexType t) {
  return t == VertexType::ISink || t == VertexType::BSink;
}
// Boundary vertices that the boundary flow leaves (emitters) or enters (absorbers).
constexpr bool is_emitter(VertexType t) {
  return t == VertexType::BSource || t == VertexType::BSaddleRep;
}
constexpr bool is_absorber(VertexType t) {
  return t == VertexType::BSink || t == VertexType::BSaddleAtt;
}

// Poincare index of the doubled flow: interior points count twice.
constexpr int doubled_index(VertexType t) {
  switch (t) {
    case VertexType::ISource:
    case VertexType::ISink: return 2;
    case VertexType::ISaddle: return -2;
    case VertexType::BSource:
    case VertexType::BSink: return 1;
    case VertexType::BSaddleRep:
    case VertexType::BSaddleAtt: return -1;
  }
  return 0;
}

VertexType reversed(VertexType t);

enum class EdgeKind : std::uint8_t { BoundaryArc, Separatrix, Connection };

const char* to_string(EdgeKind k);

// The flow runs from the vertex of `origin` to the vertex of its partner.
struct EdgeRecord {
  EdgeKind kind;
  Dart origin;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Rendering colour, derived from direction and endpoint types.
enum class EdgeColor { Boundary, Red, Green, Black };

enum class Surface { Disk, Annulus, Pants };

const char* to_string(Surface s);
std::optional<Surface> parse_surface(std::string_view s);
constexpr int hole_count(Surface s) { return static_cast<int>(s) + 1; }
// Euler characteristic of the surface itself (not its sphere closure).
constexpr int surface_euler(Surface s) { return 2 - hole_count(s); }

enum class DiagramErrorKind { Malformed, UnsupportedSurface, IsHoleFace };

class DiagramError : public std::runtime_error {
 public:
  DiagramError(DiagramErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  DiagramErrorKind kind() const { return kind_; }

 private:
  DiagramErrorKind kind_;
};

// A typed separatrix diagram. The surface is modelled as the sphere closure:
// every boundary circle is capped by a hole face whose walk uses boundary
// arcs only. Immutable; semantic validity is checked by validate().
class SeparatrixDiagram {
 public:
  // edges[e] describes map edge e; hole_faces are face ids of `map`.
  // If codim is omitted it is taken from the number of connection edges.
  SeparatrixDiagram(CombMap map, std::vector<VertexType> vtypes,
                    std::vector<EdgeRecord> edges, std::vector<int> hole_faces,
                    std::optional<int> codim = std::nullopt);

  const CombMap& map() const { return map_; }
  int num_vertices() const { return map_.num_vertices(); }
  int num_edges() const { return map_.num_edges(); }

  VertexType vtype(int v) const { return vtypes_[v]; }
  const std::vector<VertexType>& vertex_types() const { return vtypes_; }
  VertexType type_at(Dart d) const { return vtypes_[map_.vertex_of(d)]; }

  EdgeRecord edge(int e) const;
  EdgeKind kind_at(Dart d) const { return dart_kind_[d]; }
  // True when the flow leaves vertex_of(d) along d.
  bool is_out(Dart d) const { return dart_out_[d] != 0; }
  EdgeColor color(int e) const;

  const std::vector<int>& holes() const { return holes_; }
  int num_holes() const { return static_cast<int>(holes_.size()); }
  bool is_hole_face(int f) const;
  bool in_hole(Dart d) const { return dart_hole_[d] != 0; }

  int codim() const { return codim_; }
  int num_connections() const;

  // Dart d becomes perm[d]; types, edge records and holes follow.
  SeparatrixDiagram relabel(std::span<const Dart> perm) const;

  friend bool operator==(const SeparatrixDiagram& a, const SeparatrixDiagram& b);

  // Per-dart constructor used by the editing and generation code.
  static SeparatrixDiagram from_darts(CombMap map, std::vector<VertexType> vtypes,
                                      std::vector<EdgeKind> dart_kind,
                                      std::vector<char> dart_out,
                                      std::vector<char> dart_hole, int codim);

 private:
  SeparatrixDiagram() = default;

  CombMap map_ = CombMap::build({}, {});
  std::vector<VertexType> vtypes_;
  std::vector<EdgeKind> dart_kind_;
  std::vector<char> dart_out_;
  std::vector<char> dart_hole_;
  std::vector<int> holes_;
  int codim_ = 0;
};

struct Violation {
  std::string rule;      // "V1" .. "V9"
  std::string location;  // human-readable, e.g. "face 3"

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(std::string_view rule) const;
  std::string to_string() const;
};

ValidationReport validate(const SeparatrixDiagram& d);

int doubled_index_sum(const SeparatrixDiagram& d);

SeparatrixDiagram reverse_flow(const SeparatrixDiagram& d);

// Orientation reversal of the embedding.
SeparatrixDiagram mirror(const SeparatrixDiagram& d);

// Throws DiagramError(UnsupportedSurface) unless 1 <= holes <= 3.
Surface surface_of(const SeparatrixDiagram& d);

enum class Step : std::uint8_t { F, B };

struct FaceStep {
  Dart dart;            // traversed from vertex_of(dart) to vertex_of(alpha(dart))
  Step step;            // F when traversed with the flow
  int corner_vertex;    // vertex where this step ends
  VertexType corner_type;
};

struct FaceWord {
  int face = -1;
  std::vector<FaceStep> steps;

  std::string letters() const;
  // Corners where the word flips, as (vertex, flip) with flip "FB" or "BF".
  int flips() const;
};

// Throws DiagramError(IsHoleFace) for hole faces.
FaceWord face_word(const SeparatrixDiagram& d, int face);

// Assembles a diagram from vertices and directed edges. Darts are numbered in
// creation order; each edge appends one dart to the rotation of each endpoint
// unless set_rotation overrides it.
class DiagramBuilder {
 public:
  int vertex(VertexType t);
  // Returns {dart at from, dart at to}.
  std::pair<Dart, Dart> edge(int from, int to, EdgeKind kind);
  void set_rotation(int v, std::vector<Dart> ccw);
  // Marks the face containing `d` as a hole.
  void hole(Dart d);
  SeparatrixDiagram build(std::optional<int> codim = std::nullopt) const;

 private:
  std::vector<VertexType> types_;
  std::vector<std::vector<Dart>> rotation_;
  std::vector<std::pair<Dart, Dart>> pairs_;
  std::vector<EdgeKind> kinds_;
  std::vector<Dart> hole_darts_;
};

}  // namespace gradflow
