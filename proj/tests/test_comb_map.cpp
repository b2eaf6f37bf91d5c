#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gradflow/comb_map.hpp"
#include "gradflow/enumerator.hpp"

using gradflow::CombMap;
using gradflow::Dart;
using gradflow::MapError;
using gradflow::MapErrorKind;

namespace {

// Two vertices joined by two edges: A = (0 2), B = (1 3), edges 0-1 and 2-3.
CombMap d2_min() { return CombMap::build({{0, 2}, {1, 3}}, {{0, 1}, {2, 3}}); }

MapErrorKind error_kind(const std::vector<std::vector<Dart>>& rot,
                        const std::vector<std::pair<Dart, Dart>>& pairs) {
  try {
    CombMap::build(rot, pairs);
  } catch (const MapError& e) {
    return e.kind();
  }
  FAIL("expected MapError");
  return MapErrorKind::NotABijection;
}

bool conjugate(const CombMap& a, const CombMap& b, const std::vector<Dart>& p) {
  for (Dart d = 0; d < a.num_darts(); ++d) {
    if (p[a.sigma(d)] != b.sigma(p[d]) || p[a.alpha(d)] != b.alpha(p[d])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smallest two-arc map") {
  const CombMap m = d2_min();
  CHECK(m.num_vertices() == 2);
  CHECK(m.num_edges() == 2);
  CHECK(m.num_darts() == 4);
}

TEST_CASE("faces follow phi = sigma after alpha") {
  const CombMap m = d2_min();
  // Hand iteration: phi(0) = sigma(1) = 3, phi(3) = sigma(2) = 0,
  // phi(1) = sigma(0) = 2, phi(2) = sigma(3) = 1.
  REQUIRE(m.num_faces() == 2);
  CHECK(m.faces()[0] == std::vector<Dart>{0, 3});
  CHECK(m.faces()[1] == std::vector<Dart>{1, 2});
  for (Dart d = 0; d < 4; ++d) CHECK(m.phi(d) == m.sigma(m.alpha(d)));
}

TEST_CASE("euler characteristic of the two-arc map") { CHECK(d2_min().euler_characteristic() == 2); }

TEST_CASE("construction errors") {
  CHECK(error_kind({{0, 1}}, {{0, 0}}) == MapErrorKind::FixedPointInAlpha);
  CHECK(error_kind({{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}) == MapErrorKind::Disconnected);
  CHECK(error_kind({{0, 0}, {1}}, {{0, 1}}) == MapErrorKind::DuplicateDart);
  CHECK(error_kind({{0}}, {{0, 1}}) == MapErrorKind::MissingDart);
  CHECK(error_kind({{}, {0, 1}}, {{0, 1}}) == MapErrorKind::EmptyVertex);
}

TEST_CASE("errors name the offending dart") {
  try {
    CombMap::build({{0, 1}, {2, 3}}, {{0, 1}, {2, 2}});
    FAIL("expected MapError");
  } catch (const MapError& e) {
    CHECK(e.dart() == 2);
  }
}

TEST_CASE("relabel by identity and by a permutation") {
  const CombMap m = d2_min();
  std::vector<Dart> id(4);
  std::iota(id.begin(), id.end(), 0);
  CHECK(m.relabel(id) == m);
  const std::vector<Dart> p = {2, 0, 3, 1};
  const CombMap r = m.relabel(p);
  CHECK(conjugate(m, r, p));
  CHECK(r.euler_characteristic() == m.euler_characteristic());
  CHECK_THROWS_AS(m.relabel(std::vector<Dart>{0, 0, 1, 2}), MapError);
}

TEST_CASE("mirror is an involution") {
  const CombMap m = d2_min();
  CHECK(m.mirror().mirror() == m);
}

TEST_CASE("mirror of the two-arc map is isomorphic to it") {
  // Exhaust all 24 relabelings looking for a conjugacy.
  const CombMap m = d2_min();
  const CombMap r = m.mirror();
  std::vector<Dart> p = {0, 1, 2, 3};
  bool found = false;
  do {
    found = found || conjugate(m, r, p);
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(found);
}

TEST_CASE("map invariants over every enumerated diagram") {
  std::mt19937 rng(7);
  for (auto s : {gradflow::Surface::Disk, gradflow::Surface::Annulus, gradflow::Surface::Pants}) {
    for (int n = 2; n <= 6; ++n) {
      for (const auto& c : gradflow::enumerate_morse(s, n)) {
        const CombMap& m = c.diagram.map();
        CAPTURE(c.code.hex());
        CHECK(m.num_darts() == 2 * m.num_edges());
        int deg = 0;
        for (int v = 0; v < m.num_vertices(); ++v) deg += m.degree(v);
        CHECK(deg == 2 * m.num_edges());
        std::vector<int> seen(m.num_darts(), 0);
        for (const auto& f : m.faces()) {
          for (Dart d : f) ++seen[d];
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));

        std::vector<Dart> p(m.num_darts());
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const CombMap r = m.relabel(p);
        CHECK(r.euler_characteristic() == m.euler_characteristic());
        CHECK(m.mirror().euler_characteristic() == m.euler_characteristic());
        CHECK(m.mirror().num_faces() == m.num_faces());
      }
    }
  }
}

TEST_CASE("permutation orbits start at their least element") {
  const std::vector<int> perm = {2, 0, 1, 4, 3, 5};
  const auto orbits = gradflow::permutation_orbits(perm);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0] == std::vector<int>{0, 2, 1});
  CHECK(orbits[1] == std::vector<int>{3, 4});
  CHECK(orbits[2] == std::vector<int>{5});
}
