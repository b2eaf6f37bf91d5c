#include "gradflow/detail/editable.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradflow::detail {

Editable::Editable(const SeparatrixDiagram& d) {
  const CombMap& m = d.map();
  for (int v = 0; v < m.num_vertices(); ++v) {
    vertices.push_back({d.vtype(v), m.vertices()[v], true});
  }
  darts.resize(m.num_darts());
  for (Dart x = 0; x < m.num_darts(); ++x) {
    darts[x] = {m.vertex_of(x), m.alpha(x), d.kind_at(x), d.is_out(x), d.in_hole(x), true};
  }
}

int Editable::add_vertex(VertexType t) {
  vertices.push_back({t, {}, true});
  return static_cast<int>(vertices.size()) - 1;
}

Dart Editable::new_dart() {
  darts.push_back({});
  return static_cast<Dart>(darts.size()) - 1;
}

void Editable::pair(Dart origin, Dart target, EdgeKind kind) {
  darts[origin].partner = target;
  darts[target].partner = origin;
  darts[origin].kind = darts[target].kind = kind;
  darts[origin].out = true;
  darts[target].out = false;
}

Dart Editable::sigma(Dart d) const {
  const auto& rot = vertices[darts[d].vertex].rot;
  const auto it = std::find(rot.begin(), rot.end(), d);
  return std::next(it) == rot.end() ? rot.front() : *std::next(it);
}

Dart Editable::sigma_inv(Dart d) const {
  const auto& rot = vertices[darts[d].vertex].rot;
  const auto it = std::find(rot.begin(), rot.end(), d);
  return it == rot.begin() ? rot.back() : *std::prev(it);
}

void Editable::detach(Dart d) {
  if (darts[d].vertex < 0) return;
  auto& rot = vertices[darts[d].vertex].rot;
  rot.erase(std::remove(rot.begin(), rot.end(), d), rot.end());
  darts[d].vertex = -1;
}

void Editable::kill_edge(Dart d) {
  const Dart p = darts[d].partner;
  detach(d);
  darts[d].alive = false;
  if (p >= 0) {
    detach(p);
    darts[p].alive = false;
  }
}

void Editable::kill_vertex(int v) {
  while (!vertices[v].rot.empty()) kill_edge(vertices[v].rot.front());
  vertices[v].alive = false;
}

void Editable::replace(Dart slot, std::span<const Dart> seq) {
  const int v = darts[slot].vertex;
  for (Dart x : seq) {
    if (x != slot) detach(x);
  }
  auto& rot = vertices[v].rot;
  const auto it = std::find(rot.begin(), rot.end(), slot);
  const auto pos = rot.erase(it);
  rot.insert(pos, seq.begin(), seq.end());
  if (std::find(seq.begin(), seq.end(), slot) == seq.end()) darts[slot].vertex = -1;
  for (Dart x : seq) darts[x].vertex = v;
}

void Editable::insert_after(Dart anchor, Dart d) {
  detach(d);
  const int v = darts[anchor].vertex;
  auto& rot = vertices[v].rot;
  rot.insert(std::next(std::find(rot.begin(), rot.end(), anchor)), d);
  darts[d].vertex = v;
}

void Editable::insert_before(Dart anchor, Dart d) {
  detach(d);
  const int v = darts[anchor].vertex;
  auto& rot = vertices[v].rot;
  rot.insert(std::find(rot.begin(), rot.end(), anchor), d);
  darts[d].vertex = v;
}

SeparatrixDiagram Editable::build(int codim) const {
  std::vector<Dart> id(darts.size(), -1);
  int next = 0;
  std::vector<std::vector<Dart>> rotation;
  std::vector<VertexType> types;
  for (const Vertex& v : vertices) {
    if (!v.alive) continue;
    std::vector<Dart> cyc;
    for (Dart x : v.rot) {
      if (!darts[x].alive) throw std::logic_error("dead dart in rotation");
      id[x] = next++;
      cyc.push_back(id[x]);
    }
    rotation.push_back(std::move(cyc));
    types.push_back(v.type);
  }
  std::vector<std::pair<Dart, Dart>> pairs;
  std::vector<EdgeKind> kind(next);
  std::vector<char> out(next), hole(next);
  for (Dart x = 0; x < static_cast<Dart>(darts.size()); ++x) {
    if (id[x] < 0) continue;
    const Dart p = darts[x].partner;
    if (p < 0 || id[p] < 0) throw std::logic_error("dart without live partner");
    if (x < p) pairs.emplace_back(id[x], id[p]);
    kind[id[x]] = darts[x].kind;
    out[id[x]] = darts[x].out;
    hole[id[x]] = darts[x].hole;
  }
  CombMap m = CombMap::build(rotation, pairs);
  std::vector<VertexType> vt(m.num_vertices());
  for (std::size_t i = 0; i < rotation.size(); ++i) vt[m.vertex_of(rotation[i].front())] = types[i];
  return SeparatrixDiagram::from_darts(std::move(m), std::move(vt), std::move(kind),
                                       std::move(out), std::move(hole), codim);
}

}  // namespace gradflow::detail
