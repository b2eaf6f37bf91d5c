// gradflow: command-line front end for enumeration, census, validation,
// rendering and normal-form checks.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "gradflow/bifurcation.hpp"
#include "gradflow/canon.hpp"
#include "gradflow/diagram.hpp"
#include "gradflow/enumerator.hpp"
#include "gradflow/normal_forms.hpp"
#include "gradflow/render.hpp"
#include "gradflow/sdg_io.hpp"

namespace {

using namespace gradflow;

enum ExitCode { kOk = 0, kUsage = 2, kCap = 3, kInvalid = 4, kMismatch = 5 };

const std::map<std::string, Surface> kSurfaces = {
    {"disk", Surface::Disk}, {"annulus", Surface::Annulus}, {"pants", Surface::Pants}};

// Writes to `path`, or stdout when empty.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return true;
}

EnumerateOptions enum_options(int threads) {
  EnumerateOptions o;
  o.cap = point_cap_from_env();
  o.threads = threads;
  return o;
}

struct EnumerateArgs {
  std::string surface;
  int points = 0;
  int codim = 0;
  std::string out;
};

int cmd_enumerate(const EnumerateArgs& a, int threads) {
  const Surface s = kSurfaces.at(a.surface);
  std::vector<DiagramClass> classes;
  try {
    classes = enumerate_diagrams(s, a.points, a.codim, enum_options(threads));
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (set GRADFLOW_CAP to raise it)\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!a.out.empty()) {
    std::string text;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) text += "\n";
      text += to_sdg(classes[i].diagram, {"class " + std::to_string(i + 1), "code " + classes[i].code.hex()});
    }
    if (!emit(a.out, text)) return kUsage;
  }
  std::cout << classes.size() << "\n";
  return kOk;
}

struct TableArgs {
  std::string out;
  bool csv = false;
};

constexpr const char* kTableKinds[] = {"Morse", "SN", "SC", "BSN", "BDS", "HN", "HS", "HSC", "BSC"};

int cmd_table(const TableArgs& a, int threads) {
  const ReconciliationReport rep = reconcile(enum_options(threads));
  std::map<std::pair<int, int>, std::map<std::string, int>> census;
  for (const ReconcileRow& r : rep.rows) {
    census[{static_cast<int>(r.surface), r.n_before}][r.kind] = r.computed;
  }
  std::ostringstream os;
  if (a.csv) {
    os << "surface,n";
    for (const char* k : kTableKinds) os << "," << k;
    os << "\n";
    for (const PublishedRow& p : published_table()) {
      os << to_string(p.surface) << "," << p.n_before;
      for (const char* k : kTableKinds) os << "," << census[{static_cast<int>(p.surface), p.n_before}][k];
      os << "\n";
    }
    os << "\n" << rep.to_csv();
  } else {
    auto header = [&] {
      os << std::left << std::setw(9) << "surface" << std::setw(4) << "n";
      for (const char* k : kTableKinds) os << std::setw(7) << k;
      os << "\n";
    };
    os << "computed census\n";
    header();
    for (const PublishedRow& p : published_table()) {
      os << std::left << std::setw(9) << to_string(p.surface) << std::setw(4) << p.n_before;
      for (const char* k : kTableKinds) {
        os << std::setw(7) << census[{static_cast<int>(p.surface), p.n_before}][k];
      }
      os << "\n";
    }
    os << "\npublished table\n";
    header();
    for (const PublishedRow& p : published_table()) {
      os << std::left << std::setw(9) << to_string(p.surface) << std::setw(4) << p.n_before
         << std::setw(7) << p.morse;
      for (int v : p.bifurcations) os << std::setw(7) << v;
      os << "\n";
    }
    os << "\nreconciliation\n" << rep.to_text();
  }
  emit(a.out, os.str());
  return kOk;
}

// Parses a file path, or a hex canonical code when `code` is set.
std::optional<SeparatrixDiagram> load(const std::string& path, const std::string& code) {
  try {
    if (!code.empty()) {
      const auto c = CanonicalCode::from_hex(code);
      if (!c) {
        std::cerr << "error: not a hex canonical code\n";
        return std::nullopt;
      }
      return decode_code(*c);
    }
    return read_sdg_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

struct RenderArgs {
  std::string input;
  std::string code;
  std::string format = "dot";
  std::string out;
};

int cmd_render(const RenderArgs& a) {
  const auto d = load(a.input, a.code);
  if (!d) return kInvalid;
  const ValidationReport rep = validate(*d);
  if (!rep.ok) {
    std::cerr << "invalid diagram:\n" << rep.to_string();
    return kInvalid;
  }
  const std::string text = a.format == "svg" ? to_svg(*d) : to_dot(*d);
  return emit(a.out, text) ? kOk : kUsage;
}

int cmd_validate(const std::string& path) {
  const auto d = load(path, "");
  if (!d) return kInvalid;
  const ValidationReport rep = validate(*d);
  std::cout << rep.to_string();
  return rep.ok ? kOk : kInvalid;
}

struct NormalFormArgs {
  std::string family = "all";
  std::vector<double> as;
  bool csv = false;
};

int cmd_normal_forms(const NormalFormArgs& a) {
  std::vector<nf::FamilyId> ids;
  if (a.family == "all") {
    ids.assign(nf::kAllFamilies.begin(), nf::kAllFamilies.end());
  } else {
    const auto id = nf::parse_family(a.family);
    if (!id) {
      std::cerr << "error: unknown family '" << a.family << "'\n";
      return kUsage;
    }
    ids.push_back(*id);
  }
  bool ok = true;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const nf::FamilyReport rep = nf::verify_family(ids[i], a.as);
    ok = ok && rep.ok;
    std::cout << (a.csv ? rep.to_csv(i == 0) : rep.to_text());
  }
  if (a.family == "all" && !a.csv) {
    std::cout << "\ngradient checks\n";
    for (const nf::Catastrophe& c : nf::catastrophes()) {
      const nf::GradientCheck g = nf::gradient_consistency(c);
      ok = ok && g.ok;
      std::cout << "  " << nf::to_string(c.id) << ": f = " << c.f.to_string() << "  "
                << (g.ok ? "ok" : "MISMATCH " + g.mismatch) << "\n";
    }
    const std::vector<nf::Rational> cs = {-1, 0, 1};
    const nf::CInvarianceReport ci = nf::c_invariance(nf::FamilyId::BDS, cs);
    ok = ok && ci.identical;
    std::cout << "\n" << ci.to_text();
  }
  return ok ? kOk : kMismatch;
}

struct BifurcationArgs {
  std::string surface;
  int points = 0;
  std::string group_by = "diagram";
};

int cmd_bifurcations(const BifurcationArgs& a, int threads) {
  const Surface s = kSurfaces.at(a.surface);
  const EnumerateOptions opts = enum_options(threads);
  std::vector<DiagramClass> morse, conns;
  try {
    morse = enumerate_morse(s, a.points, opts);
    conns = enumerate_connections(s, a.points, opts);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  struct Entry {
    std::size_t diagram;
    BifurcationSite site;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < morse.size(); ++i) {
    for (const BifurcationSite& st : saddle_node_sites(morse[i].diagram)) entries.push_back({i, st});
  }
  auto line = [](std::ostream& os, const Entry& e, bool with_kind) {
    os << "    edge " << std::setw(3) << e.site.edge;
    if (with_kind) os << "  " << std::setw(17) << to_string(e.site.kind);
    os << "  " << std::setw(7) << to_string(e.site.polarity) << "  orbit " << e.site.orbit_size;
    if (e.site.kind == SnKind::ExcludedNodeNode) os << "  (excluded)";
    os << "\n";
  };
  std::ostringstream os;
  os << std::left;
  os << "saddle-node sites on " << a.points << "-point " << to_string(s) << " Morse diagrams\n";
  if (a.group_by == "kind") {
    for (int k = 0; k < kNumSnKinds; ++k) {
      const auto kind = static_cast<SnKind>(k);
      int count = 0;
      for (const Entry& e : entries) count += e.site.kind == kind;
      if (count == 0) continue;
      os << to_string(kind) << " (" << count << ")\n";
      for (const Entry& e : entries) {
        if (e.site.kind != kind) continue;
        os << "  diagram " << e.diagram + 1 << "\n";
        line(os, e, false);
      }
    }
  } else {
    for (std::size_t i = 0; i < morse.size(); ++i) {
      os << "diagram " << i + 1 << "  " << morse[i].code.hex() << "\n";
      for (const Entry& e : entries) {
        if (e.diagram == i) line(os, e, true);
      }
    }
  }
  os << "connection diagrams on " << a.points << " points\n";
  std::array<int, kNumConnectionClasses> totals{};
  for (std::size_t i = 0; i < conns.size(); ++i) {
    const ConnectionClass c = classify_connection(conns[i].diagram);
    ++totals[static_cast<int>(c)];
    if (a.group_by != "kind") os << "diagram " << i + 1 << "  " << to_string(c) << "\n";
  }
  for (int k = 0; k < kNumConnectionClasses; ++k) {
    os << "  " << to_string(static_cast<ConnectionClass>(k)) << " " << totals[k] << "\n";
  }
  std::cout << os.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separatrix diagrams of gradient flows on the disk, annulus and pants.\n"
               "GRADFLOW_CAP overrides the largest allowed point count (default 8)."};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads for enumeration (0: all cores)")
      ->check(CLI::NonNegativeNumber);

  const auto surfaces = CLI::IsMember({"disk", "annulus", "pants"});

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Count diagram classes; optionally write them as .sdg blocks");
  enumerate->add_option("--surface", en.surface, "disk, annulus or pants")->required()->check(surfaces);
  enumerate->add_option("--points", en.points, "Number of singular points")->required();
  enumerate->add_option("--codim", en.codim, "0 for Morse flows, 1 for one saddle connection")
      ->check(CLI::Range(0, 1));
  enumerate->add_option("--out", en.out, "Write every class to this file");

  TableArgs tb;
  auto* table = app.add_subcommand("table", "Full census next to the published table, with the reconciliation report");
  table->add_option("--out", tb.out, "Write to this file instead of stdout");
  table->add_flag("--csv", tb.csv, "CSV output");

  RenderArgs rd;
  auto* render = app.add_subcommand("render", "Draw a diagram as Graphviz DOT or SVG");
  render->add_option("input", rd.input, ".sdg file");
  render->add_option("--code", rd.code, "Hex canonical code instead of a file");
  render->add_option("--format", rd.format, "dot or svg")->check(CLI::IsMember({"dot", "svg"}));
  render->add_option("--out", rd.out, "Write to this file instead of stdout");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a .sdg file against rules V1-V9");
  validate_cmd->add_option("input", validate_path, ".sdg file")->required();

  NormalFormArgs nfa;
  auto* normal = app.add_subcommand("normal-forms", "Locate zeros of the normal-form families and check the catalog");
  normal->add_option("--family", nfa.family, "Family name (sn-source, sc, bds, ss-sink, ...) or all");
  normal->add_option("--a", nfa.as, "Parameter values, comma separated (default -1,0,1)")->delimiter(',');
  normal->add_flag("--csv", nfa.csv, "CSV output");

  BifurcationArgs bf;
  auto* bif = app.add_subcommand("bifurcations", "List bifurcation sites per diagram");
  bif->add_option("--surface", bf.surface, "disk, annulus or pants")->required()->check(surfaces);
  bif->add_option("--points", bf.points, "Number of singular points")->required();
  bif->add_option("--group-by", bf.group_by, "diagram or kind")->check(CLI::IsMember({"diagram", "kind"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(en, threads);
    if (*table) return cmd_table(tb, threads);
    if (*render) {
      if (rd.input.empty() == rd.code.empty()) {
        std::cerr << "error: give either an input file or --code\n";
        return kUsage;
      }
      return cmd_render(rd);
    }
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*normal) return cmd_normal_forms(nfa);
    if (*bif) return cmd_bifurcations(bf, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return kUsage;
}
