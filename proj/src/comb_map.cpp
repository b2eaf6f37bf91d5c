#include "gradflow/comb_map.hpp"

#include <algorithm>
#include <numeric>

namespace gradflow {

const char* to_string(MapErrorKind kind) {
  switch (kind) {
    case MapErrorKind::FixedPointInAlpha: return "FixedPointInAlpha";
    case MapErrorKind::DuplicateDart: return "DuplicateDart";
    case MapErrorKind::MissingDart: return "MissingDart";
    case MapErrorKind::Disconnected: return "Disconnected";
    case MapErrorKind::EmptyVertex: return "EmptyVertex";
    case MapErrorKind::NotABijection: return "NotABijection";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(MapErrorKind kind, Dart d, const std::string& msg) {
  throw MapError(kind, d, std::string(to_string(kind)) + ": " + msg);
}

void check_permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int d = 0; d < n; ++d) {
    const int t = perm[d];
    if (t < 0 || t >= n || seen[t]) {
      fail(MapErrorKind::NotABijection, d,
           "image of dart " + std::to_string(d) + " is not a bijection");
    }
    seen[t] = 1;
  }
}

}  // namespace

std::vector<std::vector<int>> permutation_orbits(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> orbits;
  for (int d = 0; d < n; ++d) {
    if (seen[d]) continue;
    std::vector<int> cycle;
    for (int x = d; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    orbits.push_back(std::move(cycle));
  }
  return orbits;
}

CombMap CombMap::build(const std::vector<std::vector<Dart>>& rotation,
                       const std::vector<std::pair<Dart, Dart>>& pairing) {
  const int n = static_cast<int>(2 * pairing.size());
  std::vector<Dart> sigma(n, -1);
  std::vector<Dart> alpha(n, -1);

  for (const auto& cycle : rotation) {
    if (cycle.empty()) fail(MapErrorKind::EmptyVertex, -1, "vertex with no darts");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Dart d = cycle[i];
      if (d < 0 || d >= n) {
        fail(MapErrorKind::MissingDart, d,
             "dart " + std::to_string(d) + " outside dense range 0.." +
                 std::to_string(n - 1));
      }
      if (sigma[d] != -1) {
        fail(MapErrorKind::DuplicateDart, d,
             "dart " + std::to_string(d) + " appears twice in rotation");
      }
      sigma[d] = cycle[(i + 1) % cycle.size()];
    }
  }
  for (const auto& [a, b] : pairing) {
    for (Dart d : {a, b}) {
      if (d < 0 || d >= n) {
        fail(MapErrorKind::MissingDart, d,
             "dart " + std::to_string(d) + " outside dense range");
      }
    }
    if (a == b) {
      fail(MapErrorKind::FixedPointInAlpha, a,
           "dart " + std::to_string(a) + " paired with itself");
    }
    for (Dart d : {a, b}) {
      if (alpha[d] != -1) {
        fail(MapErrorKind::DuplicateDart, d,
             "dart " + std::to_string(d) + " appears twice in pairing");
      }
    }
    alpha[a] = b;
    alpha[b] = a;
  }
  for (Dart d = 0; d < n; ++d) {
    if (sigma[d] == -1) {
      fail(MapErrorKind::MissingDart, d,
           "dart " + std::to_string(d) + " missing from rotation");
    }
  }
  return from_permutations(std::move(sigma), std::move(alpha));
}

CombMap CombMap::from_permutations(std::vector<Dart> sigma,
                                   std::vector<Dart> alpha) {
  if (sigma.size() != alpha.size()) {
    fail(MapErrorKind::NotABijection, -1, "sigma and alpha sizes differ");
  }
  check_permutation(sigma);
  check_permutation(alpha);
  const int n = static_cast<int>(sigma.size());
  for (Dart d = 0; d < n; ++d) {
    if (alpha[d] == d) {
      fail(MapErrorKind::FixedPointInAlpha, d,
           "alpha fixes dart " + std::to_string(d));
    }
    if (alpha[alpha[d]] != d) {
      fail(MapErrorKind::NotABijection, d,
           "alpha is not an involution at dart " + std::to_string(d));
    }
  }

  // Connectivity of <sigma, alpha>.
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const Dart d = stack.back();
      stack.pop_back();
      for (Dart e : {sigma[d], alpha[d]}) {
        if (!seen[e]) {
          seen[e] = 1;
          ++reached;
          stack.push_back(e);
        }
      }
    }
    if (reached != n) {
      const Dart first = static_cast<Dart>(
          std::find(seen.begin(), seen.end(), 0) - seen.begin());
      fail(MapErrorKind::Disconnected, first,
           "dart " + std::to_string(first) + " unreachable from dart 0");
    }
  }

  CombMap m;
  m.sigma_ = std::move(sigma);
  m.alpha_ = std::move(alpha);
  m.index();
  return m;
}

void CombMap::index() {
  const int n = num_darts();
  sigma_inv_.assign(n, 0);
  for (Dart d = 0; d < n; ++d) sigma_inv_[sigma_[d]] = d;

  vertices_ = permutation_orbits(sigma_);
  vertex_of_.assign(n, 0);
  for (int v = 0; v < num_vertices(); ++v) {
    for (Dart d : vertices_[v]) vertex_of_[d] = v;
  }

  std::vector<Dart> phi(n);
  for (Dart d = 0; d < n; ++d) phi[d] = sigma_[alpha_[d]];
  faces_ = permutation_orbits(phi);
  face_of_.assign(n, 0);
  for (int f = 0; f < num_faces(); ++f) {
    for (Dart d : faces_[f]) face_of_[d] = f;
  }

  edges_.clear();
  edge_of_.assign(n, -1);
  for (Dart d = 0; d < n; ++d) {
    if (edge_of_[d] != -1) continue;
    edge_of_[d] = edge_of_[alpha_[d]] = static_cast<int>(edges_.size());
    edges_.emplace_back(d, alpha_[d]);
  }
}

CombMap CombMap::relabel(std::span<const Dart> perm) const {
  const int n = num_darts();
  if (static_cast<int>(perm.size()) != n) {
    fail(MapErrorKind::NotABijection, -1, "relabeling has wrong size");
  }
  check_permutation(perm);
  std::vector<Dart> sigma(n), alpha(n);
  for (Dart d = 0; d < n; ++d) {
    sigma[perm[d]] = perm[sigma_[d]];
    alpha[perm[d]] = perm[alpha_[d]];
  }
  return from_permutations(std::move(sigma), std::move(alpha));
}

CombMap CombMap::mirror() const {
  return from_permutations(sigma_inv_, alpha_);
}

}  // namespace gradflow
