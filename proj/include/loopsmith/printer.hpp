#pragma once

#include <string>

#include "loopsmith/ast.hpp"

namespace loopsmith {

// Concrete-syntax printers. parse(print(x)) is structurally equal to x.
std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);
std::string print_expr(const ExprPtr& e, int indent = 0);
std::string print_definition(const DefPtr& d);
std::string print_program(const Program& p);

// Human-oriented rendering used by drag traces and reports:
// "k >= 0 ∧ accum = Π_{i=k+1}^{n} i", "V[h+1..high] sorted".
std::string pretty_term(const TermPtr& t);
std::string pretty_formula(const FormulaPtr& f);

}  // namespace loopsmith
