#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gradflow/diagram.hpp"

namespace gradflow {

// Label-independent identifier of a diagram's equivalence class. Ordered
// lexicographically; printed as lowercase hex.
struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;
  static std::optional<CanonicalCode> from_hex(std::string_view s);

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    return a.bytes <=> b.bytes;
  }
};

struct CanonOptions {
  // Treat orientation-reversing homeomorphisms as equivalences.
  bool include_mirror = true;
};

// A dart bijection from one diagram onto another. When orientation_reversing
// is set it conjugates sigma to the inverse rotation of the target, and the
// hole faces of the source land on alpha-images of the target's hole darts.
struct Isomorphism {
  std::vector<Dart> dart_map;
  bool orientation_reversing = false;
};

// Minimum over all start darts (and both orientations when requested) of a
// breadth-first transcript of the map with per-dart labels (vertex type,
// edge kind, direction, hole membership).
CanonicalCode canonical_code(const SeparatrixDiagram& d, CanonOptions opts = {});

// Rebuilds the diagram whose transcript is `code` (it comes out in canonical
// form). Throws DiagramError(Malformed) or MapError on corrupt input.
SeparatrixDiagram decode_code(const CanonicalCode& code);

// The diagram relabeled along its minimizing transcript (mirrored first when
// the minimum is attained in the reversed orientation). Equivalent diagrams
// have identical canonical forms.
SeparatrixDiagram canonical_form(const SeparatrixDiagram& d, CanonOptions opts = {});

std::optional<Isomorphism> are_isomorphic(const SeparatrixDiagram& a,
                                          const SeparatrixDiagram& b,
                                          CanonOptions opts = {});

// The full automorphism group, identity first.
std::vector<Isomorphism> automorphisms(const SeparatrixDiagram& d, CanonOptions opts = {});

// Edges modulo the automorphism group, each orbit sorted, ordered by least edge.
std::vector<std::vector<int>> edge_orbits(const SeparatrixDiagram& d, CanonOptions opts = {});

}  // namespace gradflow
