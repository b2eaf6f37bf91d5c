#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gradflow/diagram.hpp"
#include "gradflow/sdg_io.hpp"

namespace testing {

inline gradflow::SeparatrixDiagram fixture(const std::string& name) {
  return gradflow::read_sdg_file(std::string(GRADFLOW_TEST_DATA) + "/" + name);
}

inline std::vector<int> hole_of_vertex(const gradflow::SeparatrixDiagram& d) {
  std::vector<int> h(d.num_vertices(), -1);
  for (int k = 0; k < d.num_holes(); ++k) {
    for (gradflow::Dart x : d.map().faces()[d.holes()[k]]) h[d.map().vertex_of(x)] = k;
  }
  return h;
}

// Brute-force isomorphism test that shares no code with the canonical
// labeling: fix dart 0 of `a`, try every image in `b` under both
// orientations, propagate along sigma and alpha, and compare labels.
inline bool oracle_isomorphic(const gradflow::SeparatrixDiagram& a,
                              const gradflow::SeparatrixDiagram& b, bool allow_mirror = true) {
  using gradflow::Dart;
  const auto& ma = a.map();
  const auto& mb = b.map();
  const int n = ma.num_darts();
  if (n != mb.num_darts() || a.num_vertices() != b.num_vertices() || a.codim() != b.codim()) {
    return false;
  }
  if (n == 0) return true;
  for (int orient = 0; orient < (allow_mirror ? 2 : 1); ++orient) {
    auto sig_b = [&](Dart x) { return orient ? mb.sigma_inv(x) : mb.sigma(x); };
    for (Dart t = 0; t < n; ++t) {
      std::vector<Dart> f(n, -1), used(n, 0);
      std::vector<Dart> stack = {0};
      f[0] = t;
      used[t] = 1;
      bool ok = true;
      while (ok && !stack.empty()) {
        const Dart x = stack.back();
        stack.pop_back();
        const Dart fx = f[x];
        if (a.type_at(x) != b.type_at(fx) || a.kind_at(x) != b.kind_at(fx) ||
            a.is_out(x) != b.is_out(fx)) {
          ok = false;
          break;
        }
        const std::pair<Dart, Dart> steps[] = {{ma.sigma(x), sig_b(fx)}, {ma.alpha(x), mb.alpha(fx)}};
        for (const auto& [y, fy] : steps) {
          if (f[y] == -1) {
            if (used[fy]) {
              ok = false;
              break;
            }
            f[y] = fy;
            used[fy] = 1;
            stack.push_back(y);
          } else if (f[y] != fy) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      // Hole faces must land on hole faces. Reversing the orientation turns
      // faces into orbits of sigma^-1 alpha, which are alpha-images of faces.
      for (int h : a.holes()) {
        std::vector<Dart> img;
        for (Dart x : ma.faces()[h]) img.push_back(orient ? mb.alpha(f[x]) : f[x]);
        const int fb = mb.face_of(img.front());
        std::vector<Dart> want = mb.faces()[fb];
        std::sort(img.begin(), img.end());
        std::sort(want.begin(), want.end());
        if (!b.is_hole_face(fb) || img != want) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace testing
