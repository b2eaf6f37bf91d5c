#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gradflow/bifurcation.hpp"
#include "support.hpp"

using namespace gradflow;
using testing::fixture;

namespace {

SnCounts site_counts(const SeparatrixDiagram& d) {
  SnCounts c{};
  for (const auto& s : saddle_node_sites(d)) ++c[static_cast<int>(s.kind)];
  return c;
}

int at(const SnCounts& c, SnKind k) { return c[static_cast<int>(k)]; }

std::multiset<VertexType> types_of(const SeparatrixDiagram& d) {
  return {d.vertex_types().begin(), d.vertex_types().end()};
}

std::set<CanonicalCode> codes(Surface s, int n, int codim) {
  std::set<CanonicalCode> out;
  if (n < 2) return out;
  for (const auto& c : enumerate_diagrams(s, n, codim)) out.insert(c.code);
  return out;
}

}  // namespace

TEST_CASE("site counts on hand-checked diagrams") {
  CHECK(saddle_node_sites(fixture("disk2_min.sdg")).empty());

  const auto src = site_counts(fixture("disk4_bsn_source.sdg"));
  CHECK(at(src, SnKind::BSN) == 1);
  const auto snk = site_counts(fixture("disk4_bsn_sink.sdg"));
  CHECK(at(snk, SnKind::BSN) == 1);

  CHECK(at(site_counts(fixture("disk5_saddle_four_nodes.sdg")), SnKind::HS) == 2);
  CHECK(at(site_counts(fixture("disk5_two_sinks.sdg")), SnKind::SN) == 2);

  // All six pants points sit on the boundary and alternate, so nothing can merge.
  for (const auto& c : enumerate_morse(Surface::Pants, 6)) {
    for (const auto& s : saddle_node_sites(c.diagram)) CHECK(s.kind == SnKind::ExcludedNodeNode);
  }
}

TEST_CASE("contractions land in the smaller census") {
  for (auto s : {Surface::Disk, Surface::Annulus}) {
    for (int n = 3; n <= 6; ++n) {
      const auto smaller2 = codes(s, n - 2, 0);
      const auto smaller1 = codes(s, n - 1, 0);
      for (const auto& c : enumerate_morse(s, n)) {
        for (const auto& site : saddle_node_sites(c.diagram)) {
          if (site.kind == SnKind::ExcludedNodeNode) continue;
          CAPTURE(c.code.hex());
          CAPTURE(to_string(site.kind));
          const auto out = contract(c.diagram, site);
          if (!out) continue;
          CHECK(validate(*out).ok);
          CHECK(surface_of(*out) == s);
          CHECK(doubled_index_sum(*out) == doubled_index_sum(c.diagram));
          const bool two = site.kind == SnKind::SN || site.kind == SnKind::BSN;
          CHECK(out->num_vertices() == n - (two ? 2 : 1));
          CHECK((two ? smaller2 : smaller1).count(canonical_code(*out)) == 1);
        }
      }
    }
  }
}

TEST_CASE("half node merge keeps the index") {
  const auto d = fixture("disk5_two_sinks.sdg");
  for (int e = 0; e < d.num_edges(); ++e) {
    const auto k = classify_edge(d, e);
    if (!k || *k != SnKind::HN) continue;
    const auto out = contract(d, e);
    REQUIRE(out.has_value());
    CHECK(doubled_index_sum(*out) == doubled_index_sum(d));
  }
}

TEST_CASE("infeasible sites are rejected") {
  const auto d2 = fixture("disk2_min.sdg");
  for (int e = 0; e < d2.num_edges(); ++e) {
    CHECK_FALSE(classify_edge(d2, e).has_value());
    CHECK_THROWS_AS(contract(d2, e), NotAFeasibleSite);
  }
  CHECK_THROWS_AS(contract(d2, 99), NotAFeasibleSite);
  CHECK_THROWS_AS(contract(fixture("annulus4_bsc.sdg"), 0), NotCodimZero);
}

TEST_CASE("connection classes") {
  CHECK(classify_connection(fixture("annulus4_bsc.sdg")) == ConnectionClass::BSC);
  for (const auto& c : enumerate_connections(Surface::Pants, 6)) {
    CHECK(classify_connection(c.diagram) == ConnectionClass::BSC);
  }
  CHECK_THROWS_AS(classify_connection(fixture("disk2_min.sdg")), NotCodimOne);
}

TEST_CASE("both resolutions give Morse diagrams on the same points") {
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 3; n <= 6; ++n) {
      const auto morse = codes(s, n, 0);
      for (const auto& c : enumerate_connections(s, n)) {
        CAPTURE(c.code.hex());
        for (Side side : {Side::Left, Side::Right}) {
          const auto r = resolve_connection(c.diagram, side);
          CHECK(validate(r).ok);
          CHECK(r.codim() == 0);
          CHECK(types_of(r) == types_of(c.diagram));
          CHECK(morse.count(canonical_code(r)) == 1);
        }
      }
    }
  }
}

TEST_CASE("site counts are invariant under relabeling and mirroring") {
  std::mt19937 rng(3);
  for (auto s : {Surface::Disk, Surface::Annulus}) {
    for (const auto& c : enumerate_morse(s, 6)) {
      const auto& d = c.diagram;
      std::vector<Dart> p(d.map().num_darts());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(site_counts(d.relabel(p)) == site_counts(d));
      CHECK(site_counts(mirror(d)) == site_counts(d));
      // Reversal keeps each kind and swaps the sides.
      const auto rev = saddle_node_sites(reverse_flow(d));
      const auto fwd = saddle_node_sites(d);
      CHECK(site_counts(reverse_flow(d)) == site_counts(d));
      auto sides = [](const std::vector<BifurcationSite>& sites) {
        std::pair<int, int> n{0, 0};
        for (const auto& x : sites) {
          n.first += x.polarity == Polarity::SourceSide;
          n.second += x.polarity == Polarity::SinkSide;
        }
        return n;
      };
      CHECK(sides(fwd).first == sides(rev).second);
      CHECK(sides(fwd).second == sides(rev).first);
    }
  }
}

TEST_CASE("per-diagram sums match census totals") {
  for (auto s : {Surface::Disk, Surface::Annulus}) {
    for (int n = 3; n <= 6; ++n) {
      const auto census = sn_census(s, n);
      SnCounts sum{};
      for (const auto& row : census.per_diagram) {
        for (int k = 0; k < kNumSnKinds; ++k) sum[k] += row.counts[k];
      }
      for (int k = 0; k < kNumSnKinds; ++k) {
        if (k != static_cast<int>(SnKind::ExcludedNodeNode)) CHECK(sum[k] == census.totals[k]);
      }
      CHECK(census.per_diagram.size() == enumerate_morse(s, n).size());
    }
  }
}

TEST_CASE("reconciliation flags the published inconsistencies") {
  const auto rep = reconcile();
  bool disk4_half = false;
  for (const auto* r : rep.conflicts()) {
    if (r->surface == Surface::Disk && r->n_before == 4 && (r->kind == "HN" || r->kind == "HS")) disk4_half = true;
  }
  CHECK(disk4_half);
  CHECK(rep.to_csv().rfind("surface,nBefore,kind,computed,perDiagramSum,theoremValue,tableValue,status", 0) == 0);
  for (const auto& r : rep.rows) {
    if (r.status == ReconcileStatus::Agree && r.table_value) CHECK(*r.table_value == r.computed);
  }
}
