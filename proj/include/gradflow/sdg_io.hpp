#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gradflow/diagram.hpp"

namespace gradflow {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented text format:
//
//   surface <disk|annulus|pants>
//   vertex <id> <type>
//   rot <id>: <dart> <dart> ...        counterclockwise
//   edge <dart> <dart> <boundary|sep|conn> from <dart>
//   hole <dart> ...                    one dart per hole face
//   codim <0|1>                        optional, otherwise from the connections
//
// '#' starts a comment. Darts must be 0..n-1. The parsed diagram is not
// validated; a `surface` line that disagrees with the hole count is an error.
SeparatrixDiagram parse_sdg(std::string_view text);

// Several diagrams in one text, each starting at its own `surface` line.
std::vector<SeparatrixDiagram> parse_sdg_all(std::string_view text);

SeparatrixDiagram read_sdg_file(const std::filesystem::path& path);

// Canonical text: vertices in map order, darts as stored, holes by least dart.
// `comment` lines are written first, each prefixed with "# ".
std::string to_sdg(const SeparatrixDiagram& d, const std::vector<std::string>& comment = {});

}  // namespace gradflow
