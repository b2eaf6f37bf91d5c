#pragma once

#include <string>

#include "gradflow/diagram.hpp"

namespace gradflow {

// Graphviz text. Boundary arcs are bold and grouped in one cluster per hole;
// stable separatrices are red, unstable green, the connection black. Vertex
// shapes follow the type: sources triangles, sinks inverted triangles, saddles
// boxes; boundary vertices are filled grey.
std::string to_dot(const SeparatrixDiagram& d, const std::string& name = "sdg");

// Self-contained SVG from a straight-line layout: the first hole's vertices on
// an outer circle, other holes on small inner circles, everything else placed
// by barycentric relaxation. Parallel edges are drawn as curves.
std::string to_svg(const SeparatrixDiagram& d);

}  // namespace gradflow
