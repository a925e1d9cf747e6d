#include "minred/io.hpp"

#include <fstream>
#include <sstream>

namespace minred {

namespace {

std::vector<std::string> split_ws(const std::string& s, std::vector<int>* cols = nullptr) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back(s.substr(i, j - i));
    if (cols) cols->push_back(static_cast<int>(i) + 1);
    i = j;
  }
  return out;
}

Rat parse_coeff(const std::string& tok, int lineno, int col) {
  try {
    return parse_rat(tok);
  } catch (const std::exception&) {
    throw ParseError("invalid coefficient '" + tok + "'", lineno, col);
  }
}

}  // namespace

LineReader::LineReader(const std::string& text) {
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }
}

bool LineReader::next(std::string& line, int& lineno) {
  while (pos < lines.size()) {
    const std::string& l = lines[pos++];
    size_t k = l.find_first_not_of(" \t");
    if (k == std::string::npos || l[k] == '#') continue;
    line = l;
    lineno = static_cast<int>(pos);
    return true;
  }
  return false;
}

void LineReader::fail(const std::string& msg, int lineno, int col) const { throw ParseError(msg, lineno, col); }

ParsedModel parse_model(const std::string& text) {
  LineReader r(text);
  std::string line;
  int ln = 0;
  if (!r.next(line, ln)) throw ParseError("empty model", 1, 1);
  std::vector<int> cols;
  auto hdr = split_ws(line, &cols);
  if (hdr.size() != 3 || hdr[0] != "g1model") r.fail("expected header 'g1model 5 <Z|Q>'", ln);
  if (hdr[1] != "5") r.fail("only degree 5 models are supported", ln, cols[1]);
  ParsedModel pm;
  if (hdr[2] == "Z")
    pm.ring = RingTag::Z;
  else if (hdr[2] == "Q")
    pm.ring = RingTag::Q;
  else
    r.fail("ring must be Z or Q", ln, cols[2]);
  pm.model = zero_model(RatRing{});
  for (int p = 0; p < 10; ++p) {
    if (!r.next(line, ln)) throw ParseError("expected 10 entry lines", static_cast<int>(r.lines.size()) + 1, 1);
    cols.clear();
    auto tok = split_ws(line, &cols);
    if (tok.size() != 8 || tok[2] != ":") r.fail("expected 'i j : c1 c2 c3 c4 c5'", ln);
    int want_i = kPairs[p][0] + 1, want_j = kPairs[p][1] + 1;
    if (tok[0] != std::to_string(want_i) || tok[1] != std::to_string(want_j))
      r.fail("expected entry " + std::to_string(want_i) + " " + std::to_string(want_j), ln, cols[0]);
    for (int k = 0; k < 5; ++k) {
      Rat c = parse_coeff(tok[3 + k], ln, cols[3 + k]);
      if (pm.ring == RingTag::Z && c.get_den() != 1) r.fail("non-integral coefficient in a Z model", ln, cols[3 + k]);
      pm.model.e[p][k] = c;
    }
  }
  if (r.next(line, ln)) r.fail("trailing content after model", ln);
  return pm;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ParsedModel read_model_file(const std::string& path) { return parse_model(read_file(path)); }

std::string format_model(const Model5& m, RingTag ring) {
  std::ostringstream os;
  os << "g1model 5 " << (ring == RingTag::Z ? "Z" : "Q") << "\n";
  for (int p = 0; p < 10; ++p) {
    os << kPairs[p][0] + 1 << " " << kPairs[p][1] + 1 << " :";
    for (int k = 0; k < 5; ++k) os << " " << to_string(m.e[p][k]);
    os << "\n";
  }
  return os.str();
}

std::string format_model(const Model5& m) { return format_model(m, is_integral(m) ? RingTag::Z : RingTag::Q); }

std::string format_matrix(const RatMat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << "\n";
  }
  return os.str();
}

std::string format_transformation(const Transformation& g) {
  return "A:\n" + format_matrix(g.A) + "B:\n" + format_matrix(g.B);
}

RatMat parse_matrix5(LineReader& r, const std::string& header) {
  std::string line;
  int ln = 0;
  if (!r.next(line, ln)) throw ParseError("expected '" + header + "'", static_cast<int>(r.lines.size()) + 1, 1);
  auto h = split_ws(line);
  if (h.size() != 1 || h[0] != header) r.fail("expected '" + header + "'", ln);
  RatMat M(5, 5, Rat(0));
  for (int i = 0; i < 5; ++i) {
    if (!r.next(line, ln)) throw ParseError("expected 5 matrix rows", static_cast<int>(r.lines.size()) + 1, 1);
    std::vector<int> cols;
    auto tok = split_ws(line, &cols);
    if (tok.size() != 5) r.fail("expected 5 entries", ln);
    for (int j = 0; j < 5; ++j) M(i, j) = parse_coeff(tok[j], ln, cols[j]);
  }
  return M;
}

Transformation parse_transformation(const std::string& text) {
  LineReader r(text);
  Transformation g;
  g.A = parse_matrix5(r, "A:");
  g.B = parse_matrix5(r, "B:");
  std::string line;
  int ln;
  if (r.next(line, ln)) r.fail("trailing content after transformation", ln);
  return g;
}

}  // namespace minred
