#pragma once

#include <string>
#include <vector>

#include "loopsmith/ast.hpp"
#include "loopsmith/sexpr.hpp"

namespace loopsmith {

// Parses a whole source file (comments feed definition metadata).
Program parse_program_text(const std::string& text);

// Parses already-read forms;`comments` may be empty.
Program parse_program(const std::vector<SExprPtr>& forms,
                      const std::vector<Comment>& comments = {});

FormulaPtr parse_formula(const SExprPtr& s);
TermPtr parse_term(const SExprPtr& s);
ExprPtr parse_expr(const SExprPtr& s);

}  // namespace loopsmith
