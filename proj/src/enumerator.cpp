#include "gradflow/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

#include "gradflow/detail/editable.hpp"

namespace gradflow {

namespace {

constexpr std::array<VertexType, 2> kEmitters = {VertexType::BSource, VertexType::BSaddleRep};
constexpr std::array<VertexType, 2> kAbsorbers = {VertexType::BSink, VertexType::BSaddleAtt};

using Word = std::vector<VertexType>;

Word least_even_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 2; s < w.size(); s += 2) {
    Word r(w.begin() + s, w.end());
    r.insert(r.end(), w.begin(), w.begin() + s);
    if (r < best) best = r;
  }
  return best;
}

// Alternating emitter/absorber words of every even length up to max_len,
// one per class under rotation.
std::vector<Word> hole_words(int max_len) {
  std::vector<Word> out;
  for (int len = 2; len <= max_len; len += 2) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      Word w(len);
      for (int i = 0; i < len; ++i) {
        const int bit = (mask >> i) & 1;
        w[i] = i % 2 == 0 ? kEmitters[bit] : kAbsorbers[bit];
      }
      if (least_even_rotation(w) == w) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int TypeMultiset::points() const {
  int n = 0;
  for (int c : counts) n += c;
  return n;
}

std::string TypeMultiset::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kNumVertexTypes; ++i) {
    if (counts[i] == 0 || is_boundary(static_cast<VertexType>(i))) continue;
    os << (first ? "" : " ") << counts[i] << "x" << gradflow::to_string(static_cast<VertexType>(i));
    first = false;
  }
  for (const auto& h : holes) {
    os << (first ? "" : " ") << "(";
    for (std::size_t i = 0; i < h.size(); ++i) {
      os << (i ? " " : "") << gradflow::to_string(h[i]);
    }
    os << ")";
    first = false;
  }
  return os.str();
}

std::vector<TypeMultiset> type_multisets(Surface s, int n, int codim) {
  const int h = hole_count(s);
  const int want_index = 2 * surface_euler(s);
  const std::vector<Word> words = hole_words(n);
  std::vector<TypeMultiset> out;

  std::vector<int> pick;
  std::function<void(int, int)> choose = [&](int start, int used) {
    if (static_cast<int>(pick.size()) == h) {
      TypeMultiset base;
      int bindex = 0;
      for (int w : pick) {
        base.holes.push_back(words[w]);
        for (VertexType t : words[w]) {
          ++base.counts[static_cast<int>(t)];
          bindex += doubled_index(t);
        }
      }
      const int interior = n - used;
      for (int c = 0; c <= interior; ++c) {
        for (int a = 0; a + c <= interior; ++a) {
          const int b = interior - a - c;
          if (2 * a + 2 * b - 2 * c + bindex != want_index) continue;
          TypeMultiset ms = base;
          ms.counts[static_cast<int>(VertexType::ISource)] = a;
          ms.counts[static_cast<int>(VertexType::ISink)] = b;
          ms.counts[static_cast<int>(VertexType::ISaddle)] = c;
          const int saddles = c + ms.count(VertexType::BSaddleRep) + ms.count(VertexType::BSaddleAtt);
          if (codim == 1 && saddles < 2) continue;
          const int stable = 2 * c + ms.count(VertexType::BSaddleRep) - codim;
          const int unstable = 2 * c + ms.count(VertexType::BSaddleAtt) - codim;
          if (stable < 0 || unstable < 0) continue;
          const int sources = a + ms.count(VertexType::BSource);
          const int sinks = b + ms.count(VertexType::BSink);
          if (stable > 0 && sources == 0) continue;
          if (unstable > 0 && sinks == 0) continue;
          if (stable < a || unstable < b) continue;
          out.push_back(std::move(ms));
        }
      }
      return;
    }
    for (int w = start; w < static_cast<int>(words.size()); ++w) {
      const int len = static_cast<int>(words[w].size());
      const int holes_left = h - static_cast<int>(pick.size()) - 1;
      if (used + len + 2 * holes_left > n) continue;
      pick.push_back(w);
      choose(w, used + len);
      pick.pop_back();
    }
  };
  choose(0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Generate-validate-canonicalize over one multiset.
class MultisetSearch {
 public:
  using Sink = std::function<void(const SeparatrixDiagram&)>;

  MultisetSearch(const TypeMultiset& ms, int codim, Sink sink)
      : codim_(codim), sink_(std::move(sink)) {
    setup(ms);
  }

  void run() {
    if (codim_ == 0) {
      assign_and_order();
    } else {
      for (Dart o : out_darts_) {
        for (Dart i : in_darts_) {
          if (base_.vertex_of(o) == base_.vertex_of(i)) continue;
          conn_ = {o, i};
          assign_and_order();
        }
      }
    }
  }

 private:
  void setup(const TypeMultiset& ms) {
    auto add_nodes = [&](VertexType t) {
      for (int k = 0; k < ms.count(t); ++k) {
        const int v = base_.add_vertex(t);
        (t == VertexType::ISource ? sources_ : sinks_).push_back(v);
        interior_nodes_.push_back(v);
      }
    };
    add_nodes(VertexType::ISource);
    add_nodes(VertexType::ISink);
    for (int k = 0; k < ms.count(VertexType::ISaddle); ++k) {
      const int v = base_.add_vertex(VertexType::ISaddle);
      for (int j = 0; j < 4; ++j) {
        const Dart x = base_.new_dart();
        base_.darts[x].vertex = v;
        base_.vertices[v].rot.push_back(x);
        add_saddle_dart(x, j % 2 == 1);
      }
    }
    for (const auto& word : ms.holes) {
      const int len = static_cast<int>(word.size());
      std::vector<int> vs(len);
      for (int i = 0; i < len; ++i) vs[i] = base_.add_vertex(word[i]);
      // Arc i joins vs[i] (dart a[i]) to vs[i+1] (dart b[i]); the a-darts
      // form the hole face.
      std::vector<Dart> a(len), b(len);
      for (int i = 0; i < len; ++i) {
        a[i] = base_.new_dart();
        b[i] = base_.new_dart();
        base_.darts[a[i]].vertex = vs[i];
        base_.darts[b[i]].vertex = vs[(i + 1) % len];
        if (is_emitter(word[i])) {
          base_.pair(a[i], b[i], EdgeKind::BoundaryArc);
        } else {
          base_.pair(b[i], a[i], EdgeKind::BoundaryArc);
        }
        base_.darts[a[i]].hole = true;
      }
      for (int i = 0; i < len; ++i) {
        const int v = vs[i];
        const Dart prev = b[(i + len - 1) % len];
        const VertexType t = word[i];
        if (is_saddle(t)) {
          const Dart x = base_.new_dart();
          base_.darts[x].vertex = v;
          base_.vertices[v].rot = {a[i], x, prev};
          add_saddle_dart(x, t == VertexType::BSaddleAtt);
        } else {
          base_.vertices[v].rot = {a[i], prev};
          (t == VertexType::BSource ? sources_ : sinks_).push_back(v);
          boundary_nodes_.push_back(v);
        }
      }
    }
  }

  // Registers a saddle dart and a partner dart for its separatrix.
  void add_saddle_dart(Dart x, bool out) {
    const Dart p = base_.new_dart();
    if (out) {
      base_.pair(x, p, EdgeKind::Separatrix);
      out_darts_.push_back(x);
    } else {
      base_.pair(p, x, EdgeKind::Separatrix);
      in_darts_.push_back(x);
    }
  }

  void assign_and_order() {
    free_.clear();
    for (Dart x : in_darts_) {
      if (x != conn_.second) free_.push_back(x);
    }
    for (Dart x : out_darts_) {
      if (x != conn_.first) free_.push_back(x);
    }
    target_.assign(free_.size(), -1);
    assign(0);
  }

  void assign(std::size_t k) {
    if (k == free_.size()) {
      order_nodes();
      return;
    }
    const bool out = base_.darts[free_[k]].out;
    for (int v : (out ? sinks_ : sources_)) {
      target_[k] = v;
      assign(k + 1);
    }
  }

  void order_nodes() {
    node_darts_.assign(base_.vertices.size(), {});
    for (std::size_t k = 0; k < free_.size(); ++k) {
      node_darts_[target_[k]].push_back(base_.partner(free_[k]));
    }
    for (int v : interior_nodes_) {
      if (node_darts_[v].empty()) return;
    }
    nodes_.clear();
    for (int v : interior_nodes_) nodes_.push_back(v);
    for (int v : boundary_nodes_) nodes_.push_back(v);
    for (int v : nodes_) std::sort(node_darts_[v].begin(), node_darts_[v].end());
    permute(0);
  }

  void permute(std::size_t k) {
    if (k == nodes_.size()) {
      emit();
      return;
    }
    auto& ds = node_darts_[nodes_[k]];
    const bool interior = !is_boundary(base_.vertices[nodes_[k]].type);
    // Interior rotations are cyclic, so the least dart stays first.
    const auto first = interior && !ds.empty() ? std::next(ds.begin()) : ds.begin();
    std::sort(first, ds.end());
    do {
      permute(k + 1);
    } while (std::next_permutation(first, ds.end()));
  }

  void emit() {
    detail::Editable e = base_;
    if (codim_ == 1) {
      const auto [o, i] = conn_;
      const Dart po = e.partner(o), pi = e.partner(i);
      e.darts[po].alive = e.darts[pi].alive = false;
      e.pair(o, i, EdgeKind::Connection);
    }
    for (int v : nodes_) {
      auto& rot = e.vertices[v].rot;
      const auto& ds = node_darts_[v];
      if (is_boundary(e.vertices[v].type)) {
        rot.insert(std::next(rot.begin()), ds.begin(), ds.end());
      } else {
        rot = ds;
      }
      for (Dart x : ds) e.darts[x].vertex = v;
    }
    try {
      SeparatrixDiagram d = e.build(codim_);
      if (d.map().euler_characteristic() != 2) return;
      if (!validate(d).ok) return;
      sink_(d);
    } catch (const MapError&) {
      // Disconnected gluings are simply not diagrams.
    }
  }

  int codim_;
  detail::Editable base_;
  std::vector<int> sources_, sinks_, interior_nodes_, boundary_nodes_, nodes_;
  std::vector<Dart> in_darts_, out_darts_, free_;
  std::vector<int> target_;
  std::vector<std::vector<Dart>> node_darts_;
  std::pair<Dart, Dart> conn_{-1, -1};
  Sink sink_;
};

}  // namespace

void for_each_generated(const TypeMultiset& ms, int codim,
                        const std::function<void(const SeparatrixDiagram&)>& fn) {
  MultisetSearch(ms, codim, fn).run();
}

std::map<CanonicalCode, SeparatrixDiagram> enumerate_multiset(const TypeMultiset& ms,
                                                              int codim) {
  std::map<CanonicalCode, SeparatrixDiagram> found;
  for_each_generated(ms, codim, [&](const SeparatrixDiagram& d) {
    CanonicalCode code = canonical_code(d);
    if (!found.count(code)) found.emplace(std::move(code), canonical_form(d));
  });
  return found;
}

std::vector<DiagramClass> enumerate_diagrams(Surface s, int n, int codim,
                                             EnumerateOptions opts) {
  if (n < 2) throw std::invalid_argument("at least two singular points are required");
  if (n > opts.cap) throw CapExceeded(n, opts.cap);
  if (codim != 0 && codim != 1) throw std::invalid_argument("codimension must be 0 or 1");

  const auto multisets = type_multisets(s, n, codim);
  std::vector<std::map<CanonicalCode, SeparatrixDiagram>> parts(multisets.size());
  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, std::max<std::size_t>(1, multisets.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < multisets.size(); ++i) parts[i] = enumerate_multiset(multisets[i], codim);
  } else {
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < multisets.size(); i = next++) {
          parts[i] = enumerate_multiset(multisets[i], codim);
        }
      }));
    }
    for (auto& w : workers) w.get();
  }

  std::map<CanonicalCode, SeparatrixDiagram> merged;
  for (auto& p : parts) merged.merge(p);
  std::vector<DiagramClass> out;
  out.reserve(merged.size());
  for (auto& [code, d] : merged) out.push_back({code, std::move(d)});
  return out;
}

std::vector<DiagramClass> enumerate_morse(Surface s, int n, EnumerateOptions opts) {
  return enumerate_diagrams(s, n, 0, opts);
}

std::vector<DiagramClass> enumerate_connections(Surface s, int n, EnumerateOptions opts) {
  return enumerate_diagrams(s, n, 1, opts);
}

int point_cap_from_env() {
  if (const char* v = std::getenv("GRADFLOW_CAP")) {
    char* end = nullptr;
    const long cap = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && cap >= 2) return static_cast<int>(cap);
  }
  return kDefaultPointCap;
}

}  // namespace gradflow
