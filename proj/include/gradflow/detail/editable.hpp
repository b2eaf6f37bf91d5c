#pragma once

#include <span>
#include <vector>

#include "gradflow/diagram.hpp"

namespace gradflow::detail {

// Mutable rotation system used for local surgery. Darts and vertices are
// tombstoned rather than erased, so ids stay stable until build() compacts.
class Editable {
 public:
  struct Vertex {
    VertexType type;
    std::vector<Dart> rot;  // counterclockwise
    bool alive = true;
  };
  struct DartInfo {
    int vertex = -1;
    Dart partner = -1;
    EdgeKind kind = EdgeKind::Separatrix;
    bool out = false;
    bool hole = false;
    bool alive = true;
  };

  Editable() = default;
  explicit Editable(const SeparatrixDiagram& d);

  int add_vertex(VertexType t);
  // A fresh dart not yet in any rotation.
  Dart new_dart();
  void pair(Dart origin, Dart target, EdgeKind kind);

  int vertex_of(Dart d) const { return darts[d].vertex; }
  Dart partner(Dart d) const { return darts[d].partner; }
  VertexType type_at(Dart d) const { return vertices[darts[d].vertex].type; }
  Dart sigma(Dart d) const;
  Dart sigma_inv(Dart d) const;

  // Removes both darts of d's edge from their rotations.
  void kill_edge(Dart d);
  void kill_vertex(int v);
  // Replaces `slot` in its rotation by `seq` (moved from wherever they were).
  void replace(Dart slot, std::span<const Dart> seq);
  void insert_after(Dart anchor, Dart d);
  void insert_before(Dart anchor, Dart d);
  void detach(Dart d);

  int live_degree(int v) const { return static_cast<int>(vertices[v].rot.size()); }

  SeparatrixDiagram build(int codim) const;

  std::vector<Vertex> vertices;
  std::vector<DartInfo> darts;
};

}  // namespace gradflow::detail
