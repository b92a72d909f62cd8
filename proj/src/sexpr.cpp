#include "loopsmith/sexpr.hpp"

#include <cctype>

namespace loopsmith {

namespace {

struct Reader {
  const std::string& text;
  size_t i = 0;
  int line = 1, col = 1;
  std::vector<Comment>* comments;

  Reader(const std::string& t, std::vector<Comment>* c) : text(t), comments(c) {}

  bool eof() const { return i >= text.size(); }
  char peek() const { return text[i]; }
  SourcePos pos() const { return {line, col}; }

  char advance() {
    char c = text[i++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        SourcePos p = pos();
        std::string body;
        while (!eof() && peek() != '\n') body += advance();
        size_t k = 0;
        while (k < body.size() && body[k] == ';') ++k;
        if (k < body.size() && body[k] == ' ') ++k;
        if (comments) comments->push_back({body.substr(k), p});
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
           c == '[' || c == ']' || c == ';' || c == '"';
  }

  SExprPtr read_string(SourcePos start) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (eof()) throw ParseError("unterminated string literal", start);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) throw ParseError("unterminated string literal", start);
        char e = advance();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          default:
            throw ParseError(std::string("unknown string escape '\\") + e + "'", start);
        }
      } else {
        out += c;
      }
    }
    return std::make_shared<SExpr>(SExpr::Atom{std::move(out), true}, start);
  }

  SExprPtr read_form() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of input", pos());
    SourcePos start = pos();
    char c = peek();
    if (c == '(' || c == '[') {
      char close = (c == '(') ? ')' : ']';
      advance();
      std::vector<SExprPtr> items;
      while (true) {
        skip_ws();
        if (eof())
          throw ParseError("unbalanced parenthesis: this opener is never closed", start);
        char d = peek();
        if (d == ')' || d == ']') {
          SourcePos cp = pos();
          advance();
          if (d != close)
            throw ParseError(std::string("mismatched delimiter: expected '") + close + "'", cp);
          break;
        }
        items.push_back(read_form());
      }
      return std::make_shared<SExpr>(SExpr::List{std::move(items)}, start);
    }
    if (c == ')' || c == ']') throw ParseError("unexpected closing delimiter", start);
    if (c == '"') return read_string(start);
    std::string lexeme;
    while (!eof() && !delimiter(peek())) lexeme += advance();
    return std::make_shared<SExpr>(SExpr::Atom{std::move(lexeme), false}, start);
  }
};

void render(const SExprPtr& s, std::string& out) {
  if (s->is_atom()) {
    const auto& a = s->atom();
    if (a.is_string) {
      out += '"';
      for (char c : a.lexeme) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
    } else {
      out += a.lexeme;
    }
    return;
  }
  out += '(';
  const auto& items = s->list().items;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    render(items[i], out);
  }
  out += ')';
}

}  // namespace

ReadResult read_sexprs(const std::string& text) {
  ReadResult res;
  Reader r(text, &res.comments);
  while (true) {
    r.skip_ws();
    if (r.eof()) break;
    res.forms.push_back(r.read_form());
  }
  return res;
}

std::string sexpr_to_string(const SExprPtr& s) {
  std::string out;
  render(s, out);
  return out;
}

}  // namespace loopsmith
