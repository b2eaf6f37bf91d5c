#include <doctest.h>

#include <set>

#include "gradflow/enumerator.hpp"
#include "support.hpp"

using namespace gradflow;

namespace {

int count(const TypeMultiset& ms, VertexType t) { return ms.count(t); }

}  // namespace

TEST_CASE("type multisets of small surfaces") {
  const auto disk2 = type_multisets(Surface::Disk, 2);
  REQUIRE(disk2.size() == 1);
  CHECK(count(disk2[0], VertexType::BSource) == 1);
  CHECK(count(disk2[0], VertexType::BSink) == 1);
  CHECK(disk2[0].points() == 2);

  // On the annulus with four points every point sits on a boundary circle.
  for (const auto& ms : type_multisets(Surface::Annulus, 4)) {
    for (auto t : {VertexType::ISource, VertexType::ISink, VertexType::ISaddle}) CHECK(ms.count(t) == 0);
    CHECK(ms.holes.size() == 2);
  }

  bool found = false;
  for (const auto& ms : type_multisets(Surface::Pants, 6)) {
    found |= ms.count(VertexType::BSource) == 1 && ms.count(VertexType::BSink) == 1 &&
             ms.count(VertexType::BSaddleRep) + ms.count(VertexType::BSaddleAtt) == 4;
  }
  CHECK(found);
}

TEST_CASE("multisets satisfy the index and supply constraints") {
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 2; n <= 7; ++n) {
      for (int codim = 0; codim <= 1; ++codim) {
        for (const auto& ms : type_multisets(s, n, codim)) {
          int idx = 0;
          for (int t = 0; t < kNumVertexTypes; ++t) idx += ms.counts[t] * doubled_index(static_cast<VertexType>(t));
          CHECK(idx == 2 * surface_euler(s));
          CHECK(ms.points() == n);
          CHECK(static_cast<int>(ms.holes.size()) == hole_count(s));
          for (const auto& h : ms.holes) {
            REQUIRE(h.size() % 2 == 0);
            for (std::size_t i = 0; i < h.size(); ++i) {
              CHECK(is_emitter(h[i]) == (i % 2 == 0));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("small counts") {
  CHECK(enumerate_morse(Surface::Disk, 2).size() == 1);
  CHECK(enumerate_morse(Surface::Disk, 3).size() == 2);
  CHECK(enumerate_morse(Surface::Disk, 4).size() == 5);
  CHECK(enumerate_morse(Surface::Pants, 6).size() == 2);
  CHECK(enumerate_connections(Surface::Annulus, 4).size() == 1);
  CHECK(enumerate_connections(Surface::Pants, 6).size() == 4);
  CHECK(enumerate_connections(Surface::Disk, 2).empty());
}

TEST_CASE("enumerated classes are valid, distinct and closed under reversal") {
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 2; n <= 6; ++n) {
      for (int codim = 0; codim <= 1; ++codim) {
        const auto classes = enumerate_diagrams(s, n, codim);
        std::set<CanonicalCode> codes;
        for (const auto& c : classes) {
          CAPTURE(c.code.hex());
          CHECK(validate(c.diagram).ok);
          CHECK(surface_of(c.diagram) == s);
          CHECK(c.diagram.num_vertices() == n);
          CHECK(c.diagram.codim() == codim);
          CHECK(canonical_code(c.diagram) == c.code);
          codes.insert(c.code);
        }
        CHECK(codes.size() == classes.size());
        for (const auto& c : classes) CHECK(codes.count(canonical_code(reverse_flow(c.diagram))) == 1);
        for (std::size_t i = 1; i < classes.size(); ++i) CHECK(classes[i - 1].code < classes[i].code);
      }
    }
  }
}

TEST_CASE("the thread count does not change the result") {
  for (auto s : {Surface::Disk, Surface::Annulus}) {
    const auto one = enumerate_morse(s, 6, {.threads = 1});
    const auto many = enumerate_morse(s, 6, {.threads = 4});
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(one[i].code == many[i].code);
      CHECK(one[i].diagram == many[i].diagram);
    }
  }
}

TEST_CASE("raw gluings dedupe to the enumerated classes") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<SeparatrixDiagram> raw;
    for (const auto& ms : type_multisets(Surface::Disk, n)) {
      for_each_generated(ms, 0, [&](const SeparatrixDiagram& d) { raw.push_back(d); });
    }
    std::vector<SeparatrixDiagram> reps;
    for (const auto& d : raw) {
      bool seen = false;
      for (const auto& r : reps) {
        if (testing::oracle_isomorphic(d, r)) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.push_back(d);
    }
    CHECK(reps.size() == enumerate_morse(Surface::Disk, n).size());
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(enumerate_morse(Surface::Disk, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_morse(Surface::Disk, 9), CapExceeded);
  CHECK_THROWS_AS(enumerate_morse(Surface::Disk, 5, {.cap = 4}), CapExceeded);
  try {
    enumerate_morse(Surface::Disk, 5, {.cap = 4});
  } catch (const CapExceeded& e) {
    CHECK(e.points() == 5);
    CHECK(e.cap() == 4);
  }
}
