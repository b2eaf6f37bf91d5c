#include "gradflow/canon.hpp"

#include <algorithm>
#include <numeric>

namespace gradflow {

namespace {

// The diagram seen from one orientation: rotation, pairing and a byte of
// labels per dart.
struct View {
  std::vector<Dart> sig;
  std::vector<Dart> alp;
  std::vector<std::uint8_t> attr;
};

View make_view(const SeparatrixDiagram& d, bool reversed) {
  const CombMap& m = d.map();
  const int n = m.num_darts();
  View v;
  v.sig.resize(n);
  v.alp = m.alpha_array();
  v.attr.resize(n);
  for (Dart x = 0; x < n; ++x) {
    v.sig[x] = reversed ? m.sigma_inv(x) : m.sigma(x);
    const bool hole = reversed ? d.in_hole(m.alpha(x)) : d.in_hole(x);
    v.attr[x] = static_cast<std::uint8_t>(static_cast<int>(d.type_at(x)) |
                                          static_cast<int>(d.kind_at(x)) << 3 |
                                          (d.is_out(x) ? 1 : 0) << 5 | (hole ? 1 : 0) << 6);
  }
  return v;
}

void put16(std::vector<std::uint8_t>& out, int x) {
  out.push_back(static_cast<std::uint8_t>(x >> 8));
  out.push_back(static_cast<std::uint8_t>(x & 0xff));
}

// Breadth-first relabeling from `root`; writes the visiting order and the
// transcript. Connected maps are fully determined by the transcript.
void transcript(const View& v, Dart root, int codim, std::vector<Dart>& order,
                std::vector<std::uint8_t>& code) {
  const int n = static_cast<int>(v.sig.size());
  std::vector<int> label(n, -1);
  order.clear();
  order.reserve(n);
  label[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Dart x = order[i];
    for (Dart y : {v.alp[x], v.sig[x]}) {
      if (label[y] < 0) {
        label[y] = static_cast<int>(order.size());
        order.push_back(y);
      }
    }
  }
  code.clear();
  code.reserve(3 + 5 * n);
  put16(code, n);
  code.push_back(static_cast<std::uint8_t>(codim));
  for (Dart x : order) {
    code.push_back(v.attr[x]);
    put16(code, label[v.sig[x]]);
    put16(code, label[v.alp[x]]);
  }
}

}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

std::optional<CanonicalCode> CanonicalCode::from_hex(std::string_view s) {
  if (s.size() % 2) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  CanonicalCode c;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    const int hi = nibble(s[i]), lo = nibble(s[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    c.bytes.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return c;
}

CanonicalCode canonical_code(const SeparatrixDiagram& d, CanonOptions opts) {
  const int n = d.map().num_darts();
  CanonicalCode best;
  std::vector<Dart> order;
  std::vector<std::uint8_t> code;
  for (int r = 0; r < (opts.include_mirror ? 2 : 1); ++r) {
    const View v = make_view(d, r == 1);
    for (Dart root = 0; root < n; ++root) {
      transcript(v, root, d.codim(), order, code);
      if (best.bytes.empty() || code < best.bytes) best.bytes = code;
    }
  }
  if (n == 0) transcript(make_view(d, false), 0, d.codim(), order, best.bytes);
  return best;
}

SeparatrixDiagram decode_code(const CanonicalCode& code) {
  const auto& b = code.bytes;
  auto bad = [](const std::string& why) {
    return DiagramError(DiagramErrorKind::Malformed, "bad canonical code: " + why);
  };
  if (b.size() < 3) throw bad("too short");
  const int n = b[0] << 8 | b[1];
  const int codim = b[2];
  if (b.size() != 3 + 5 * static_cast<std::size_t>(n)) throw bad("length does not match dart count");
  std::vector<Dart> sig(n), alp(n);
  std::vector<std::uint8_t> attr(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t o = 3 + 5 * static_cast<std::size_t>(i);
    attr[i] = b[o];
    sig[i] = b[o + 1] << 8 | b[o + 2];
    alp[i] = b[o + 3] << 8 | b[o + 4];
    if (sig[i] >= n || alp[i] >= n) throw bad("dart label out of range");
    if ((attr[i] & 7) >= kNumVertexTypes || (attr[i] >> 3 & 3) > 2) throw bad("bad label byte");
  }
  CombMap m = CombMap::from_permutations(std::move(sig), std::move(alp));
  std::vector<VertexType> vt(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    vt[v] = static_cast<VertexType>(attr[m.vertices()[v].front()] & 7);
    for (Dart x : m.vertices()[v]) {
      if (static_cast<VertexType>(attr[x] & 7) != vt[v]) throw bad("vertex type differs between darts");
    }
  }
  std::vector<EdgeKind> kind(n);
  std::vector<char> out(n), hole(n);
  for (Dart x = 0; x < n; ++x) {
    kind[x] = static_cast<EdgeKind>(attr[x] >> 3 & 3);
    out[x] = attr[x] >> 5 & 1;
    hole[x] = attr[x] >> 6 & 1;
  }
  return SeparatrixDiagram::from_darts(std::move(m), std::move(vt), std::move(kind),
                                       std::move(out), std::move(hole), codim);
}

SeparatrixDiagram canonical_form(const SeparatrixDiagram& d, CanonOptions opts) {
  const int n = d.map().num_darts();
  if (n == 0) return d;
  std::vector<std::uint8_t> best, code;
  std::vector<Dart> best_order, order;
  bool best_rev = false;
  for (int r = 0; r < (opts.include_mirror ? 2 : 1); ++r) {
    const View v = make_view(d, r == 1);
    for (Dart root = 0; root < n; ++root) {
      transcript(v, root, d.codim(), order, code);
      if (best.empty() || code < best) {
        best = code;
        best_order = order;
        best_rev = r == 1;
      }
    }
  }
  std::vector<Dart> perm(n);
  for (int i = 0; i < n; ++i) perm[best_order[i]] = i;
  return (best_rev ? mirror(d) : d).relabel(perm);
}

namespace {

template <typename Fn>
void for_each_isomorphism(const SeparatrixDiagram& a, const SeparatrixDiagram& b,
                          CanonOptions opts, Fn&& fn) {
  const int n = a.map().num_darts();
  if (n != b.map().num_darts() || a.num_vertices() != b.num_vertices() ||
      a.map().num_faces() != b.map().num_faces() || a.codim() != b.codim() || n == 0) {
    return;
  }
  std::vector<Dart> order_a, order_b;
  std::vector<std::uint8_t> code_a, code_b;
  transcript(make_view(a, false), 0, a.codim(), order_a, code_a);
  for (int r = 0; r < (opts.include_mirror ? 2 : 1); ++r) {
    const View vb = make_view(b, r == 1);
    for (Dart root = 0; root < n; ++root) {
      transcript(vb, root, b.codim(), order_b, code_b);
      if (code_a != code_b) continue;
      Isomorphism iso;
      iso.orientation_reversing = r == 1;
      iso.dart_map.resize(n);
      for (int i = 0; i < n; ++i) iso.dart_map[order_a[i]] = order_b[i];
      if (!fn(std::move(iso))) return;
    }
  }
}

}  // namespace

std::optional<Isomorphism> are_isomorphic(const SeparatrixDiagram& a,
                                          const SeparatrixDiagram& b, CanonOptions opts) {
  std::optional<Isomorphism> found;
  for_each_isomorphism(a, b, opts, [&](Isomorphism iso) {
    found = std::move(iso);
    return false;
  });
  return found;
}

std::vector<Isomorphism> automorphisms(const SeparatrixDiagram& d, CanonOptions opts) {
  std::vector<Isomorphism> out;
  for_each_isomorphism(d, d, opts, [&](Isomorphism iso) {
    out.push_back(std::move(iso));
    return true;
  });
  return out;
}

std::vector<std::vector<int>> edge_orbits(const SeparatrixDiagram& d, CanonOptions opts) {
  const CombMap& m = d.map();
  std::vector<int> parent(m.num_edges());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Isomorphism& iso : automorphisms(d, opts)) {
    for (int e = 0; e < m.num_edges(); ++e) {
      const int f = m.edge_of(iso.dart_map[m.edge(e).first]);
      const int ra = find(e), rb = find(f);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::vector<std::vector<int>> orbits;
  std::vector<int> slot(m.num_edges(), -1);
  for (int e = 0; e < m.num_edges(); ++e) {
    const int r = find(e);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(e);
  }
  return orbits;
}

}  // namespace gradflow
