#include <doctest.h>

#include <regex>

#include "gradflow/enumerator.hpp"
#include "gradflow/render.hpp"
#include "gradflow/sdg_io.hpp"
#include "support.hpp"

using namespace gradflow;
using testing::fixture;

namespace {

int count_matches(const std::string& s, const std::regex& re) {
  return static_cast<int>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

int parse_error_line(const std::string& text) {
  try {
    parse_sdg(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("text round trip over every enumerated diagram") {
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 2; n <= 6; ++n) {
      for (int codim = 0; codim <= 1; ++codim) {
        for (const auto& c : enumerate_diagrams(s, n, codim)) {
          const std::string text = to_sdg(c.diagram, {"class", c.code.hex()});
          const auto back = parse_sdg(text);
          CHECK(back == c.diagram);
          CHECK(back.codim() == c.diagram.codim());
          CHECK(to_sdg(back) == to_sdg(c.diagram));
        }
      }
    }
  }
}

TEST_CASE("several diagrams in one text") {
  const std::string text = to_sdg(fixture("disk2_min.sdg")) + "\n" + to_sdg(fixture("annulus4_bsc.sdg"));
  const auto all = parse_sdg_all(text);
  REQUIRE(all.size() == 2);
  CHECK(all[1].codim() == 1);
}

TEST_CASE("parse errors carry line numbers") {
  const std::string head = "surface disk\nvertex 0 bSource\nvertex 1 bSink\n";
  CHECK(parse_error_line("surface torus\n") == 1);
  CHECK(parse_error_line(head + "rot 0: 0 2\nrot 1: 1 x\n") == 5);
  CHECK(parse_error_line(head + "frobnicate\n") == 4);
  CHECK(parse_error_line(head + "rot 0: 0 2\nrot 1: 1 3\nedge 0 1 boundary from 0\nedge 2 3 boundary from 9\n") == 7);

  try {
    fixture("broken_syntax.sdg");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bSinkk") != std::string::npos);
  }

  // The annulus needs two holes.
  const std::string d2 = to_sdg(fixture("disk2_min.sdg"));
  std::string wrong = d2;
  wrong.replace(wrong.find("surface disk"), 12, "surface annulus");
  CHECK_THROWS_AS(parse_sdg(wrong), ParseError);
}

TEST_CASE("dot output of the two-point disk") {
  const std::string dot = to_dot(fixture("disk2_min.sdg"));
  CHECK(count_matches(dot, std::regex(R"(\bv\d+ \[label)")) == 2);
  CHECK(count_matches(dot, std::regex(R"(v\d+ -> v\d+)")) == 2);
  CHECK(count_matches(dot, std::regex("subgraph cluster_hole")) == 1);
  CHECK(dot.find("color=gray30") != std::string::npos);
}

TEST_CASE("every connection diagram draws exactly one black edge") {
  const std::regex black("color=black");
  for (auto s : {Surface::Disk, Surface::Annulus, Surface::Pants}) {
    for (int n = 3; n <= 6; ++n) {
      for (const auto& c : enumerate_connections(s, n)) {
        const std::string dot = to_dot(c.diagram);
        CHECK(count_matches(dot, black) == 1);
        CHECK(count_matches(dot, std::regex("subgraph cluster_hole")) == hole_count(s));
      }
      for (const auto& c : enumerate_morse(s, n)) CHECK(count_matches(to_dot(c.diagram), black) == 0);
    }
  }
}

TEST_CASE("svg output is a closed document") {
  for (const char* name : {"disk2_min.sdg", "annulus4_bsc.sdg", "pants6_morse.sdg"}) {
    const auto d = fixture(name);
    const std::string svg = to_svg(d);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_matches(svg, std::regex(R"(<path d="M[-0-9.]+,[-0-9.]+ Q)")) == d.num_edges());
    CHECK(count_matches(svg, std::regex("<text ")) == d.num_vertices());
    CHECK(svg.find("nan") == std::string::npos);
  }
}
