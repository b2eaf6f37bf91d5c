#pragma once

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradflow/canon.hpp"
#include "gradflow/diagram.hpp"

namespace gradflow {

inline constexpr int kDefaultPointCap = 8;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int n, int cap)
      : std::runtime_error("point count " + std::to_string(n) + " exceeds cap " +
                           std::to_string(cap)),
        n_(n),
        cap_(cap) {}
  int points() const { return n_; }
  int cap() const { return cap_; }

 private:
  int n_;
  int cap_;
};

// Vertex type counts plus the cyclic sequence of boundary types on each hole.
// Each hole word starts with an emitter and is the least of its even
// rotations; holes are sorted.
struct TypeMultiset {
  std::array<int, kNumVertexTypes> counts{};
  std::vector<std::vector<VertexType>> holes;

  int count(VertexType t) const { return counts[static_cast<int>(t)]; }
  int points() const;
  std::string to_string() const;

  friend bool operator==(const TypeMultiset&, const TypeMultiset&) = default;
  friend auto operator<=>(const TypeMultiset&, const TypeMultiset&) = default;
};

// All multisets with n points on the surface satisfying hole alternation,
// the doubled-index sum and separatrix supply/demand (one stable and one
// unstable saddle dart are reserved for the connection when codim = 1).
std::vector<TypeMultiset> type_multisets(Surface s, int n, int codim = 0);

struct EnumerateOptions {
  int cap = kDefaultPointCap;
  int threads = 0;  // 0: hardware concurrency
};

// One equivalence class: its code and its canonical form.
struct DiagramClass {
  CanonicalCode code;
  SeparatrixDiagram diagram;
};

// Calls fn on every valid gluing the search produces, before deduplication.
void for_each_generated(const TypeMultiset& ms, int codim,
                        const std::function<void(const SeparatrixDiagram&)>& fn);

// Every valid diagram generated from one multiset, keyed by code.
std::map<CanonicalCode, SeparatrixDiagram> enumerate_multiset(const TypeMultiset& ms,
                                                              int codim);

// Sorted by code. Throws CapExceeded when n > opts.cap and
// std::invalid_argument when n < 2.
std::vector<DiagramClass> enumerate_morse(Surface s, int n, EnumerateOptions opts = {});
std::vector<DiagramClass> enumerate_connections(Surface s, int n, EnumerateOptions opts = {});
std::vector<DiagramClass> enumerate_diagrams(Surface s, int n, int codim,
                                             EnumerateOptions opts = {});

// Reads GRADFLOW_CAP, falling back to kDefaultPointCap.
int point_cap_from_env();

}  // namespace gradflow
