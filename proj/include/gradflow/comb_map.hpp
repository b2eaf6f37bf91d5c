#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradflow {

using Dart = int;

enum class MapErrorKind {
  FixedPointInAlpha,
  DuplicateDart,
  MissingDart,
  Disconnected,
  EmptyVertex,
  NotABijection,
};

const char* to_string(MapErrorKind kind);

class MapError : public std::runtime_error {
 public:
  MapError(MapErrorKind kind, Dart dart, const std::string& what)
      : std::runtime_error(what), kind_(kind), dart_(dart) {}

  MapErrorKind kind() const { return kind_; }
  // Offending dart, or -1 when the error is not about a single dart.
  Dart dart() const { return dart_; }

 private:
  MapErrorKind kind_;
  Dart dart_;
};

// An oriented combinatorial map on darts 0..n-1.
//
//   sigma  counterclockwise successor of a dart around its vertex
//   alpha  the other dart of the same edge (fixed-point-free involution)
//   phi    face successor, phi(d) = sigma(alpha(d))
//
// phi is the only face-walk convention used anywhere in the library: walking
// a face, the dart d traverses its edge from vertex_of(d) to
// vertex_of(alpha(d)), then turns counterclockwise to phi(d).
//
// Vertex, edge and face orbits are numbered by their least dart, and each
// orbit cycle is listed starting from that dart. Values are immutable.
class CombMap {
 public:
  // rotation[v] lists the darts of vertex v counterclockwise; pairing lists
  // the edges. Throws MapError.
  static CombMap build(const std::vector<std::vector<Dart>>& rotation,
                       const std::vector<std::pair<Dart, Dart>>& pairing);
  static CombMap from_permutations(std::vector<Dart> sigma,
                                   std::vector<Dart> alpha);

  int num_darts() const { return static_cast<int>(sigma_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return num_darts() / 2; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
  Dart alpha(Dart d) const { return alpha_[d]; }
  Dart phi(Dart d) const { return sigma_[alpha_[d]]; }

  int vertex_of(Dart d) const { return vertex_of_[d]; }
  int edge_of(Dart d) const { return edge_of_[d]; }
  int face_of(Dart d) const { return face_of_[d]; }

  const std::vector<std::vector<Dart>>& vertices() const { return vertices_; }
  const std::vector<std::vector<Dart>>& faces() const { return faces_; }
  // Edge e as (least dart, its partner).
  std::pair<Dart, Dart> edge(int e) const { return edges_[e]; }
  int degree(int v) const { return static_cast<int>(vertices_[v].size()); }

  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_faces();
  }

  // Conjugates by perm: dart d of this map becomes perm[d].
  CombMap relabel(std::span<const Dart> perm) const;
  // Orientation reversal: sigma replaced by its inverse.
  CombMap mirror() const;

  const std::vector<Dart>& sigma_array() const { return sigma_; }
  const std::vector<Dart>& alpha_array() const { return alpha_; }

  friend bool operator==(const CombMap& a, const CombMap& b) {
    return a.sigma_ == b.sigma_ && a.alpha_ == b.alpha_;
  }

 private:
  CombMap() = default;
  void index();

  std::vector<Dart> sigma_;
  std::vector<Dart> sigma_inv_;
  std::vector<Dart> alpha_;
  std::vector<int> vertex_of_;
  std::vector<int> edge_of_;
  std::vector<int> face_of_;
  std::vector<std::vector<Dart>> vertices_;
  std::vector<std::vector<Dart>> faces_;
  std::vector<std::pair<Dart, Dart>> edges_;
};

// Orbits of a permutation, each starting at its least element, ordered by
// that element.
std::vector<std::vector<int>> permutation_orbits(std::span<const int> perm);

}  // namespace gradflow
