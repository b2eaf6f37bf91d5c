// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gradflow/bifurcation.hpp"
#include "gradflow/canon.hpp"
#include "gradflow/enumerator.hpp"
#include "gradflow/normal_forms.hpp"
#include "support.hpp"

using namespace gradflow;

namespace {

// Collects mismatches for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void equal(int got, int want, const std::string& what) {
    if (got != want) failures.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  }
};

const std::vector<Surface> kSurfaces = {Surface::Disk, Surface::Annulus, Surface::Pants};

int min_points(Surface s) { return s == Surface::Pants ? 6 : (s == Surface::Annulus ? 4 : 2); }

std::string name(Surface s, int n) { return std::string(to_string(s)) + " n=" + std::to_string(n); }

Check morse_census() {
  Check c;
  const std::vector<std::tuple<Surface, int, int>> want = {
      {Surface::Disk, 2, 1},    {Surface::Disk, 3, 2},    {Surface::Disk, 4, 5},
      {Surface::Disk, 5, 7},    {Surface::Disk, 6, 22},   {Surface::Annulus, 4, 2},
      {Surface::Annulus, 5, 4}, {Surface::Annulus, 6, 14}, {Surface::Pants, 6, 2},
  };
  for (const auto& [s, n, k] : want) {
    c.equal(static_cast<int>(enumerate_morse(s, n).size()), k, name(s, n) + " Morse");
  }
  return c;
}

Check pants() {
  Check c;
  const SnCensus sn = sn_census(Surface::Pants, 6);
  int total = 0;
  for (SnKind k : {SnKind::SN, SnKind::BSN, SnKind::BDS, SnKind::HN, SnKind::HS}) total += sn[k];
  c.equal(total, 0, "pants saddle-node sites");
  const auto conns = enumerate_connections(Surface::Pants, 6);
  c.equal(static_cast<int>(conns.size()), 4, "pants connection diagrams");
  for (const auto& dc : conns) {
    c.expect(classify_connection(dc.diagram) == ConnectionClass::BSC, "pants connection " + dc.code.hex() + " not BSC");
  }
  return c;
}

void sn_rows(Check& c, Surface s, int n, const std::map<SnKind, int>& want) {
  const SnCensus sn = sn_census(s, n);
  for (const auto& [k, v] : want) c.equal(sn[k], v, name(s, n) + " " + to_string(k));
}

Check saddle_node_rows() {
  Check c;
  sn_rows(c, Surface::Disk, 6, {{SnKind::SN, 30}, {SnKind::HN, 12}, {SnKind::HS, 38}, {SnKind::BDS, 5}});
  sn_rows(c, Surface::Disk, 5, {{SnKind::SN, 8}, {SnKind::HN, 6}, {SnKind::HS, 8}, {SnKind::BSN, 2}});
  sn_rows(c, Surface::Disk, 3, {{SnKind::HN, 2}});
  sn_rows(c, Surface::Annulus, 5, {{SnKind::HN, 10}});
  sn_rows(c, Surface::Annulus, 6,
          {{SnKind::SN, 4}, {SnKind::HN, 4}, {SnKind::HS, 18}, {SnKind::BSN, 14}, {SnKind::BDS, 6}});
  return c;
}

const ReconcileRow* find_row(const std::vector<ReconcileRow>& rows, Surface s, int n, const std::string& kind) {
  for (const auto& r : rows) {
    if (r.surface == s && r.n_before == n && r.kind == kind) return &r;
  }
  return nullptr;
}

int stated_values(const ReconcileRow& r) {
  std::set<int> v;
  for (const auto& x : {r.per_diagram_sum, r.theorem_value, r.table_value}) {
    if (x) v.insert(*x);
  }
  return static_cast<int>(v.size());
}

Check reconciliation() {
  Check c;
  const ReconciliationReport rep = reconcile();
  const std::string text = rep.to_text();
  auto conflict = [&](Surface s, int n, const std::string& kind) {
    const ReconcileRow* r = find_row(rep.rows, s, n, kind);
    const std::string label = name(s, n) + " " + kind;
    if (!r) {
      c.failures.push_back(label + " missing from report");
      return;
    }
    c.expect(r->status == ReconcileStatus::PaperInternalConflict, label + " not flagged as a paper conflict");
    c.expect(stated_values(*r) >= 2, label + " lists fewer than two stated values");
  };
  conflict(Surface::Disk, 4, "HN");
  conflict(Surface::Disk, 4, "HS");
  conflict(Surface::Disk, 6, "BSN");
  conflict(Surface::Annulus, 5, "HN");
  const ReconcileRow* bds = find_row(rep.rows, Surface::Annulus, 5, "BDS");
  c.expect(bds && !bds->note.empty(), "annulus n=5 BDS column not annotated");
  for (int n : {4, 5, 6}) {
    c.expect(find_row(rep.rows, Surface::Disk, n, "HSC") != nullptr, "disk HSC row missing at n=" + std::to_string(n));
    c.expect(find_row(rep.alternate_connection_rows, Surface::Disk, n, "HSC") != nullptr,
             "disk HSC alternate alignment missing at n=" + std::to_string(n));
  }
  c.expect(text.find("paperInternalConflict") != std::string::npos, "text report lacks conflict rows");

  // Quoted itemizations: one BSN on each of the two disk-4 diagrams that have
  // a boundary node next to an interior node, and two HS on the self-reverse
  // five-point disk with one saddle and four nodes.
  std::map<CanonicalCode, SnCounts> disk4, disk5;
  for (const auto& row : sn_census(Surface::Disk, 4).per_diagram) disk4[row.code] = row.counts;
  for (const auto& row : sn_census(Surface::Disk, 5).per_diagram) disk5[row.code] = row.counts;
  const int bsn = static_cast<int>(SnKind::BSN), hs = static_cast<int>(SnKind::HS);
  int with_bsn = 0;
  for (const auto& [code, counts] : disk4) {
    if (counts[bsn] > 0) {
      ++with_bsn;
      c.equal(counts[bsn], 1, "disk n=4 BSN on one diagram");
    }
  }
  c.equal(with_bsn, 2, "disk n=4 diagrams carrying BSN");
  for (const char* f : {"disk4_bsn_source.sdg", "disk4_bsn_sink.sdg"}) {
    const auto code = canonical_code(testing::fixture(f));
    c.expect(disk4.count(code) && disk4[code][bsn] == 1, std::string(f) + " BSN count");
  }
  const auto four_nodes = canonical_code(testing::fixture("disk5_saddle_four_nodes.sdg"));
  c.expect(disk5.count(four_nodes) && disk5[four_nodes][hs] == 2, "five-point saddle with four nodes: HS count");
  return c;
}

Check connection_censuses() {
  Check c;
  const ReconciliationReport rep = reconcile();
  auto row = [&](Surface s, int n, const std::map<ConnectionClass, int>& want) {
    const ConnectionCensus cc = connection_census(s, n);
    for (const auto& [k, v] : want) {
      c.equal(cc[k], v, name(s, n) + " " + to_string(k));
      // Mismatches must be visible in the reconciliation report.
      const ReconcileRow* r = find_row(rep.rows, s, n, to_string(k));
      if (cc[k] != v && (!r || r->status == ReconcileStatus::Agree)) {
        c.failures.push_back(name(s, n) + " " + to_string(k) + " mismatch not reported");
      }
    }
  };
  row(Surface::Annulus, 4, {{ConnectionClass::BSC, 1}});
  row(Surface::Annulus, 5, {{ConnectionClass::BSC, 2}, {ConnectionClass::HSC, 2}});
  row(Surface::Annulus, 6, {{ConnectionClass::SC, 2}, {ConnectionClass::HSC, 10}, {ConnectionClass::BSC, 9}});
  row(Surface::Disk, 6, {{ConnectionClass::SC, 7}, {ConnectionClass::HSC, 6}, {ConnectionClass::BSC, 2}});
  return c;
}

Check oracle_equivalence() {
  Check c;
  for (int n = 2; n <= 5; ++n) {
    std::vector<SeparatrixDiagram> raw;
    for (const auto& ms : type_multisets(Surface::Disk, n)) {
      for_each_generated(ms, 0, [&](const SeparatrixDiagram& d) { raw.push_back(d); });
    }
    // Pairwise classes from the brute-force oracle.
    std::vector<int> oracle_class(raw.size(), -1);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (std::size_t r = 0; r < reps.size(); ++r) {
        if (testing::oracle_isomorphic(raw[i], raw[reps[r]])) {
          oracle_class[i] = static_cast<int>(r);
          break;
        }
      }
      if (oracle_class[i] < 0) {
        oracle_class[i] = static_cast<int>(reps.size());
        reps.push_back(i);
      }
    }
    std::map<CanonicalCode, int> code_class;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto code = canonical_code(raw[i]);
      const auto [it, fresh] = code_class.emplace(code, oracle_class[i]);
      if (!fresh && it->second != oracle_class[i]) {
        c.failures.push_back("disk n=" + std::to_string(n) + ": one code spans two oracle classes");
      }
    }
    c.equal(static_cast<int>(code_class.size()), static_cast<int>(reps.size()),
            "disk n=" + std::to_string(n) + " code classes vs oracle classes");
    std::set<CanonicalCode> enumerated;
    for (const auto& dc : enumerate_morse(Surface::Disk, n)) enumerated.insert(dc.code);
    std::set<CanonicalCode> generated;
    for (const auto& [code, cls] : code_class) generated.insert(code);
    c.expect(enumerated == generated, "disk n=" + std::to_string(n) + " enumeration membership");
  }
  return c;
}

Check properties() {
  Check c;
  for (Surface s : kSurfaces) {
    const int want_index = 2 * surface_euler(s);
    for (int n = min_points(s); n <= 6; ++n) {
      std::map<int, std::set<CanonicalCode>> smaller;
      for (int k = std::max(2, n - 2); k < n; ++k) {
        for (const auto& dc : enumerate_morse(s, k)) smaller[k].insert(dc.code);
      }
      for (int codim = 0; codim <= 1; ++codim) {
        for (const auto& dc : enumerate_diagrams(s, n, codim)) {
          const auto& d = dc.diagram;
          const std::string at = name(s, n) + " " + dc.code.hex();
          c.expect(validate(d).ok, at + " invalid");
          c.equal(doubled_index_sum(d), want_index, at + " index sum");
          const auto rev = reverse_flow(d);
          c.expect(validate(rev).ok, at + " reversal invalid");
          c.expect(canonical_code(reverse_flow(rev)) == dc.code, at + " reversal not an involution");
          c.expect(canonical_code(mirror(d)) == dc.code, at + " mirror changes the code");
          if (codim != 0) continue;
          for (const auto& site : saddle_node_sites(d)) {
            if (site.kind == SnKind::ExcludedNodeNode) continue;
            const auto out = contract(d, site);
            if (!out) continue;
            c.expect(validate(*out).ok, at + " contraction invalid");
            const int k = out->num_vertices();
            c.expect(smaller[k].count(canonical_code(*out)) == 1, at + " contraction not enumerated");
          }
        }
      }
    }
  }
  return c;
}

Check normal_forms() {
  Check c;
  for (nf::FamilyId id : nf::kAllFamilies) {
    const nf::FamilyReport rep = nf::verify_family(id);
    c.expect(rep.ok, std::string(nf::to_string(id)) + " catalog mismatch:\n" + rep.to_text());
    for (const auto& row : rep.rows) {
      for (const auto& z : row.zeros) {
        c.expect(z.residual < nf::kResidualTol, std::string(nf::to_string(id)) + " residual too large");
      }
    }
  }
  for (const auto& cat : nf::catastrophes()) {
    const auto g = nf::gradient_consistency(cat);
    c.expect(g.ok, std::string(nf::to_string(cat.id)) + " gradient: " + g.mismatch);
  }
  const std::vector<nf::Rational> cs = {nf::Rational(-1), nf::Rational(0), nf::Rational(1)};
  c.expect(nf::c_invariance(nf::FamilyId::BDS, cs).identical, "BDS depends on c");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"1 Morse census", morse_census},
      {"2 pants results", pants},
      {"3 saddle-node rows", saddle_node_rows},
      {"4 reconciliation report", reconciliation},
      {"5 connection censuses", connection_censuses},
      {"6 oracle equivalence", oracle_equivalence},
      {"7 property suite", properties},
      {"8 normal-form suite", normal_forms},
  };
  int failed = 0;
  for (const auto& [label, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s %s\n", c.failures.empty() ? "PASS" : "FAIL", label);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    failed += !c.failures.empty();
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
