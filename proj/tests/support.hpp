#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "loopsmith/parser.hpp"

namespace loopsmith::test {

inline std::string corpus_path(const std::string& name) {
  return std::string(LOOPSMITH_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load_corpus(const std::string& name) {
  return parse_program_text(slurp(corpus_path(name)));
}

inline FormulaPtr formula(const std::string& text) {
  auto r = read_sexprs(text);
  return parse_formula(r.forms.at(0));
}

inline TermPtr term(const std::string& text) {
  auto r = read_sexprs(text);
  return parse_term(r.forms.at(0));
}

inline ExprPtr expr(const std::string& text) {
  auto r = read_sexprs(text);
  return parse_expr(r.forms.at(0));
}

}  // namespace loopsmith::test
