#pragma once

#include <iosfwd>
#include <string>

#include "minred/models.hpp"

namespace minred {

enum class RingTag { Z, Q };

struct ParsedModel {
  Model5 model;
  RingTag ring = RingTag::Q;
};

// Text format:
//   g1model 5 <Z|Q>
//   i j : c1 c2 c3 c4 c5      (ten lines in lex order of (i,j))
// Blank lines and lines starting with '#' are ignored.
ParsedModel parse_model(const std::string& text);
ParsedModel read_model_file(const std::string& path);
std::string format_model(const Model5& m, RingTag ring);
std::string format_model(const Model5& m);  // Z when integral, else Q

// Two 5x5 matrices under headers "A:" and "B:".
std::string format_transformation(const Transformation& g);
Transformation parse_transformation(const std::string& text);

// Shared line tokenizer state, also used for hint files.
struct LineReader {
  std::vector<std::string> lines;
  size_t pos = 0;
  explicit LineReader(const std::string& text);
  // Next non-blank, non-comment line; returns false at end.
  bool next(std::string& line, int& lineno);
  [[noreturn]] void fail(const std::string& msg, int lineno, int col = 1) const;
};

RatMat parse_matrix5(LineReader& r, const std::string& header);
std::string format_matrix(const RatMat& m);
std::string read_file(const std::string& path);

}  // namespace minred
