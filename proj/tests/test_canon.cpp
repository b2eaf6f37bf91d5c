#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "gradflow/canon.hpp"
#include "gradflow/enumerator.hpp"
#include "support.hpp"

using namespace gradflow;
using testing::fixture;
using testing::oracle_isomorphic;

namespace {

std::vector<Dart> random_perm(int n, std::mt19937& rng) {
  std::vector<Dart> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Checks that `iso` carries the labels of a onto b.
bool is_witness(const SeparatrixDiagram& a, const SeparatrixDiagram& b, const Isomorphism& iso) {
  const auto& ma = a.map();
  const auto& mb = b.map();
  for (Dart x = 0; x < ma.num_darts(); ++x) {
    const Dart fx = iso.dart_map[x];
    const Dart want = iso.orientation_reversing ? mb.sigma_inv(fx) : mb.sigma(fx);
    if (iso.dart_map[ma.sigma(x)] != want) return false;
    if (iso.dart_map[ma.alpha(x)] != mb.alpha(fx)) return false;
    if (a.type_at(x) != b.type_at(fx) || a.kind_at(x) != b.kind_at(fx)) return false;
    if (a.is_out(x) != b.is_out(fx)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("code ignores dart labels") {
  std::mt19937 rng(11);
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 2; n <= 6; ++n) {
      for (const auto& c : enumerate_diagrams(s, n, n % 2)) {
        const auto& d = c.diagram;
        for (int k = 0; k < 3; ++k) {
          CHECK(canonical_code(d.relabel(random_perm(d.map().num_darts(), rng))) == c.code);
        }
        CHECK(canonical_code(mirror(d)) == c.code);
        CHECK(decode_code(c.code) == canonical_form(d));
      }
    }
  }
}

TEST_CASE("reversal changes the class of the one-saddle disk") {
  const auto d = fixture("disk3_rep_saddle.sdg");
  CHECK(canonical_code(d) != canonical_code(reverse_flow(d)));
  CHECK(canonical_code(reverse_flow(d)) == canonical_code(fixture("disk3_att_saddle.sdg")));
}

TEST_CASE("isomorphism witnesses") {
  std::mt19937 rng(5);
  const auto d = fixture("disk5_two_sinks.sdg");
  const auto r = d.relabel(random_perm(d.map().num_darts(), rng));
  const auto iso = are_isomorphic(d, r);
  REQUIRE(iso.has_value());
  CHECK(is_witness(d, r, *iso));

  const auto m = mirror(d);
  const auto iso_m = are_isomorphic(d, m);
  REQUIRE(iso_m.has_value());
  CHECK(is_witness(d, m, *iso_m));

  CHECK_FALSE(are_isomorphic(fixture("disk2_min.sdg"), fixture("disk3_rep_saddle.sdg")));
  CHECK_FALSE(are_isomorphic(fixture("disk3_rep_saddle.sdg"), fixture("disk3_att_saddle.sdg")));
}

TEST_CASE("automorphisms of the two-point disk") {
  const auto d = fixture("disk2_min.sdg");
  const auto group = automorphisms(d);
  // Identity and the reflection that swaps the two arcs.
  CHECK(group.size() == 2);
  CHECK(edge_orbits(d).size() == 1);
  CHECK(automorphisms(d, {.include_mirror = false}).size() == 1);
}

TEST_CASE("automorphism group properties") {
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 2; n <= 6; ++n) {
      for (const auto& c : enumerate_diagrams(s, n, 0)) {
        const auto& d = c.diagram;
        const auto group = automorphisms(d);
        REQUIRE_FALSE(group.empty());
        // Fixing one dart fixes everything, so the group acts freely on darts.
        CHECK((2 * d.map().num_darts()) % static_cast<int>(group.size()) == 0);
        for (const auto& g : group) CHECK(is_witness(d, d, g));
        for (const auto& orbit : edge_orbits(d)) {
          const auto [a0, b0] = d.map().edge(orbit.front());
          for (int e : orbit) {
            const auto [a, b] = d.map().edge(e);
            CHECK(d.kind_at(a) == d.kind_at(a0));
            const std::multiset<VertexType> t0 = {d.type_at(a0), d.type_at(b0)};
            const std::multiset<VertexType> t = {d.type_at(a), d.type_at(b)};
            CHECK(t == t0);
          }
        }
      }
    }
  }
}

TEST_CASE("canonical codes agree with the brute-force oracle") {
  for (auto s : {Surface::Disk, Surface::Annulus}) {
    for (int n = 2; n <= 5; ++n) {
      std::vector<SeparatrixDiagram> ds;
      for (int c = 0; c <= 1; ++c) {
        for (const auto& dc : enumerate_diagrams(s, n, c)) ds.push_back(dc.diagram);
      }
      for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i; j < ds.size(); ++j) {
          const bool same = canonical_code(ds[i]) == canonical_code(ds[j]);
          CHECK(same == oracle_isomorphic(ds[i], ds[j]));
          CHECK(same == (i == j));
        }
      }
    }
  }
}

TEST_CASE("hex round trip and corrupt codes") {
  const auto code = canonical_code(fixture("annulus4_bsc.sdg"));
  const auto back = CanonicalCode::from_hex(code.hex());
  REQUIRE(back.has_value());
  CHECK(*back == code);
  CHECK_FALSE(CanonicalCode::from_hex("0g"));
  CHECK_FALSE(CanonicalCode::from_hex("abc"));
  CanonicalCode bad = code;
  bad.bytes.pop_back();
  CHECK_THROWS(decode_code(bad));
}
