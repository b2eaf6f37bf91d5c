#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradflow/canon.hpp"
#include "gradflow/diagram.hpp"
#include "gradflow/enumerator.hpp"

namespace gradflow {

enum class SnKind { SN, BSN, HN, HS, BDS, ExcludedNodeNode };
inline constexpr int kNumSnKinds = 6;

const char* to_string(SnKind k);

// Which node takes part: the source side merges a source-type node, the sink
// side a sink-type node. Saddle-saddle and node-node arcs are neutral.
enum class Polarity { SourceSide, SinkSide, Neutral };

const char* to_string(Polarity p);

struct BifurcationSite {
  CanonicalCode code;
  int edge = -1;        // least edge of its automorphism orbit
  int orbit_size = 1;
  SnKind kind = SnKind::SN;
  Polarity polarity = Polarity::Neutral;
};

class NotCodimZero : public std::invalid_argument {
 public:
  NotCodimZero() : std::invalid_argument("diagram is not a Morse (codim 0) diagram") {}
};

class NotCodimOne : public std::invalid_argument {
 public:
  NotCodimOne() : std::invalid_argument("diagram does not have exactly one connection") {}
};

class NotAFeasibleSite : public std::invalid_argument {
 public:
  explicit NotAFeasibleSite(const std::string& why) : std::invalid_argument(why) {}
};

class InvalidResolution : public std::runtime_error {
 public:
  explicit InvalidResolution(const std::string& why) : std::runtime_error(why) {}
};

// The site kind of a single edge, or nothing when the edge is not a
// candidate (connections, bSaddle-bNode separatrices, arcs on 2-vertex holes,
// iSaddle-node pairs joined more than once).
std::optional<SnKind> classify_edge(const SeparatrixDiagram& d, int edge);
Polarity edge_polarity(const SeparatrixDiagram& d, int edge);

// One site per automorphism orbit of candidate edges, ordered by edge.
// ExcludedNodeNode sites are included; census counts skip them.
std::vector<BifurcationSite> saddle_node_sites(const SeparatrixDiagram& d);

using SnCounts = std::array<int, kNumSnKinds>;

struct DiagramSites {
  CanonicalCode code;
  bool self_reverse = false;
  SnCounts counts{};
};

struct SnCensus {
  Surface surface = Surface::Disk;
  int n_before = 0;
  SnCounts totals{};  // ExcludedNodeNode is reported, never part of a total
  std::vector<DiagramSites> per_diagram;

  int operator[](SnKind k) const { return totals[static_cast<int>(k)]; }
};

SnCensus sn_census(Surface s, int n_before, EnumerateOptions opts = {});

// The diagram after the bifurcation when the rewiring is forced; nothing
// otherwise. Throws NotAFeasibleSite for non-candidate edges or excluded arcs.
std::optional<SeparatrixDiagram> contract(const SeparatrixDiagram& d, int edge);
std::optional<SeparatrixDiagram> contract(const SeparatrixDiagram& d,
                                          const BifurcationSite& site);

enum class ConnectionClass { SC, HSC, BSC };
inline constexpr int kNumConnectionClasses = 3;

const char* to_string(ConnectionClass c);

ConnectionClass classify_connection(const SeparatrixDiagram& c);

enum class Side { Left, Right };

// Breaks the connection by sliding the upstream saddle's unstable separatrix
// to one side of the downstream saddle. Both sides give Morse diagrams on the
// same vertex set.
SeparatrixDiagram resolve_connection(const SeparatrixDiagram& c, Side side);

using ConnectionCounts = std::array<int, kNumConnectionClasses>;

struct ConnectionCensus {
  Surface surface = Surface::Disk;
  int n = 0;
  ConnectionCounts totals{};

  int operator[](ConnectionClass k) const { return totals[static_cast<int>(k)]; }
};

ConnectionCensus connection_census(Surface s, int n, EnumerateOptions opts = {});

enum class ReconcileStatus { Agree, PaperInternalConflict, ComputedDiffers };

const char* to_string(ReconcileStatus s);

struct ReconcileRow {
  Surface surface = Surface::Disk;
  int n_before = 0;
  std::string kind;  // SN, HN, ..., SC, HSC, BSC, Morse
  int computed = 0;
  std::optional<int> per_diagram_sum;
  std::optional<int> theorem_value;
  std::optional<int> table_value;
  ReconcileStatus status = ReconcileStatus::Agree;
  std::string note;
};

struct ReconciliationReport {
  std::vector<ReconcileRow> rows;
  // Connection counts compared with the published rows shifted by one point.
  std::vector<ReconcileRow> alternate_connection_rows;

  std::string to_text() const;
  std::string to_csv() const;
  std::vector<const ReconcileRow*> conflicts() const;
};

// Published reference values used by reconcile() and the table command.
struct PublishedRow {
  Surface surface;
  int n_before;
  int morse;
  // SN, SC, BSN, BDS, HN, HS, HSC, BSC
  std::array<int, 8> bifurcations;
};
const std::vector<PublishedRow>& published_table();

// Rows for every surface and point count in the published table.
ReconciliationReport reconcile(EnumerateOptions opts = {});

}  // namespace gradflow
