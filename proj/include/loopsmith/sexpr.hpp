#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "loopsmith/diag.hpp"

namespace loopsmith {

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  struct Atom {
    std::string lexeme;
    bool is_string = false;  // string literal; lexeme is the decoded content
  };
  struct List {
    std::vector<SExprPtr> items;
  };

  std::variant<Atom, List> node;
  SourcePos pos;

  SExpr(std::variant<Atom, List> n, SourcePos p) : node(std::move(n)), pos(p) {}

  bool is_atom() const { return std::holds_alternative<Atom>(node); }
  bool is_list() const { return std::holds_alternative<List>(node); }
  const Atom& atom() const { return std::get<Atom>(node); }
  const List& list() const { return std::get<List>(node); }
};

struct Comment {
  std::string text;  // without the leading ';' characters
  SourcePos pos;
};

struct ReadResult {
  std::vector<SExprPtr> forms;
  std::vector<Comment> comments;
};

// Reads all forms from `text`. `;` starts a comment to end of line; `[` `]`
// are interchangeable with `(` `)` but must match. Throws ParseError with the
// position of the offending character (for an unterminated list, the position
// of the innermost unclosed opener).
ReadResult read_sexprs(const std::string& text);

std::string sexpr_to_string(const SExprPtr& s);

}  // namespace loopsmith
