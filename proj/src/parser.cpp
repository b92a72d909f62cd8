#include "loopsmith/parser.hpp"

#include <cctype>
#include <map>
#include <set>

namespace loopsmith {

namespace {

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (!looks_numeric(s)) return false;
  size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  for (size_t i = k; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  try {
    out = std::stoll(s);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

const std::string& head_of(const SExprPtr& s) {
  static const std::string empty;
  if (!s->is_list() || s->list().items.empty()) return empty;
  const auto& h = s->list().items[0];
  if (!h->is_atom() || h->atom().is_string) return empty;
  return h->atom().lexeme;
}

std::string require_name(const SExprPtr& s, const char* what) {
  if (!s->is_atom() || s->atom().is_string)
    throw ParseError(std::string(what) + " must be a name", s->pos);
  const std::string& n = s->atom().lexeme;
  if (looks_numeric(n)) throw ParseError(std::string(what) + " must be a name", s->pos);
  return n;
}

// ---- terms ----------------------------------------------------------------

TermPtr term_of(const SExprPtr& s);

TermPtr big_op(const SExprPtr& s, bool is_prod) {
  const auto& items = s->list().items;
  if (items.size() != 3 || !items[1]->is_list() || items[1]->list().items.size() != 3)
    throw ParseError("expected (" + std::string(is_prod ? "prod" : "sum") +
                         " (index lo hi) body)",
                     s->pos, is_prod ? "(prod (i lo hi) body)" : "(sum (i lo hi) body)");
  const auto& binder = items[1]->list().items;
  std::string index = require_name(binder[0], "big-operator index");
  TermPtr lo = term_of(binder[1]);
  TermPtr hi = term_of(binder[2]);
  if (free_vars(lo).count(index) || free_vars(hi).count(index))
    throw ParseError("big-operator bounds must not reference the index '" + index + "'",
                     items[1]->pos);
  TermPtr body = term_of(items[2]);
  return is_prod ? mk_bigprod(index, lo, hi, body) : mk_bigsum(index, lo, hi, body);
}

TermPtr term_of(const SExprPtr& s) {
  if (s->is_atom()) {
    const auto& a = s->atom();
    if (a.is_string) throw ParseError("strings are not terms", s->pos);
    std::int64_t v;
    if (parse_int(a.lexeme, v)) return mk_int(v);
    if (looks_numeric(a.lexeme))
      throw ParseError("not an exact integer: '" + a.lexeme + "'", s->pos);
    return mk_tvar(a.lexeme);
  }
  const auto& items = s->list().items;
  const std::string& h = head_of(s);
  if (h.empty()) throw ParseError("expected a term", s->pos);
  auto args = [&](size_t lo_n, size_t hi_n, const char* form) {
    size_t n = items.size() - 1;
    if (n < lo_n || (hi_n != 0 && n > hi_n))
      throw ParseError(std::string("bad arity for ") + form, s->pos, form);
  };
  if (h == "+") {
    args(2, 0, "(+ t t ...)");
    std::vector<TermPtr> ts;
    for (size_t i = 1; i < items.size(); ++i) ts.push_back(term_of(items[i]));
    return mk_add(std::move(ts));
  }
  if (h == "-") {
    args(2, 2, "(- t t)");
    return mk_sub(term_of(items[1]), term_of(items[2]));
  }
  if (h == "*") {
    args(2, 0, "(* t t ...)");
    std::vector<TermPtr> ts;
    for (size_t i = 1; i < items.size(); ++i) ts.push_back(term_of(items[i]));
    return mk_mul(std::move(ts));
  }
  if (h == "sub1") {
    args(1, 1, "(sub1 t)");
    return mk_sub1(term_of(items[1]));
  }
  if (h == "add1") {
    args(1, 1, "(add1 t)");
    return mk_add1(term_of(items[1]));
  }
  if (h == "prod") return big_op(s, true);
  if (h == "sum") return big_op(s, false);
  if (h == "vref") {
    args(2, 2, "(vref name t)");
    return mk_vref(require_name(items[1], "vector"), term_of(items[2]));
  }
  if (h == "vlen") {
    args(1, 1, "(vlen name)");
    return mk_vlen(require_name(items[1], "vector"));
  }
  throw ParseError("unknown term operator '" + h + "'", s->pos);
}

// ---- formulas ---------------------------------------------------------------

FormulaPtr formula_of(const SExprPtr& s) {
  if (s->is_atom()) {
    const auto& lex = s->atom().lexeme;
    if (lex == "true") return mk_true();
    if (lex == "false") return mk_false();
    throw ParseError("expected a formula, got atom '" + lex + "'", s->pos,
                     "(and ...), (= t t), (sorted v lo hi), true, false");
  }
  const auto& items = s->list().items;
  const std::string& h = head_of(s);
  if (h.empty()) throw ParseError("expected a formula", s->pos);
  if (h == "and" || h == "or") {
    std::vector<FormulaPtr> fs;
    for (size_t i = 1; i < items.size(); ++i) fs.push_back(formula_of(items[i]));
    if (fs.empty()) return h == "and" ? mk_true() : mk_false();
    if (fs.size() == 1) return fs[0];
    return h == "and" ? mk_and(std::move(fs)) : mk_or(std::move(fs));
  }
  if (h == "not") {
    if (items.size() != 2) throw ParseError("bad arity for (not f)", s->pos, "(not f)");
    return mk_not(formula_of(items[1]));
  }
  if (h == "implies") {
    if (items.size() != 3)
      throw ParseError("bad arity for (implies f f)", s->pos, "(implies f f)");
    return mk_implies(formula_of(items[1]), formula_of(items[2]));
  }
  if (h == "sorted") {
    if (items.size() != 4)
      throw ParseError("bad arity for (sorted name lo hi)", s->pos, "(sorted v lo hi)");
    return mk_sorted(require_name(items[1], "vector"), term_of(items[2]), term_of(items[3]));
  }
  static const std::map<std::string, CmpOp> cmps = {{"=", CmpOp::Eq},
                                                    {"<", CmpOp::Lt},
                                                    {"<=", CmpOp::Le},
                                                    {">", CmpOp::Gt},
                                                    {">=", CmpOp::Ge}};
  auto it = cmps.find(h);
  if (it != cmps.end()) {
    if (items.size() != 3)
      throw ParseError("comparison takes exactly two terms", s->pos, "(" + h + " t t)");
    return mk_cmp(it->second, term_of(items[1]), term_of(items[2]));
  }
  throw ParseError("unknown formula operator '" + h + "'", s->pos);
}

// ---- expressions ------------------------------------------------------------

struct ParseCtx {
  // line -> comment text, for definition metadata recovery
  std::map<int, std::string> comment_lines;

  DefMeta meta_for(const std::string& name, SourcePos def_pos, bool var_def) const {
    DefMeta m;
    // Contiguous comment block immediately above the definition.
    std::vector<std::string> block;
    for (int ln = def_pos.line - 1; ln >= 1; --ln) {
      auto it = comment_lines.find(ln);
      if (it == comment_lines.end()) break;
      block.insert(block.begin(), it->second);
    }
    for (const auto& line : block) {
      auto starts = [&](const char* key) { return line.rfind(key, 0) == 0; };
      if (auto p = line.find("Purpose:"); p != std::string::npos) {
        if (!m.purpose) m.purpose = line.substr(p + 8);
      } else if (auto e = line.find("Effect:"); e != std::string::npos) {
        if (!m.effect) m.effect = line.substr(e + 7);
      } else if (starts((name + ":").c_str()) || starts((name + " :").c_str()) ||
                 line.find("->") != std::string::npos) {
        if (!m.signature) m.signature = line;
      } else if (var_def && !m.type_note && line.find("Invariant:") == std::string::npos) {
        m.type_note = line;
      }
    }
    auto trim = [](std::optional<std::string>& s) {
      if (!s) return;
      size_t b = s->find_first_not_of(' ');
      if (b == std::string::npos) {
        s.reset();
        return;
      }
      *s = s->substr(b, s->find_last_not_of(' ') - b + 1);
    };
    trim(m.signature);
    trim(m.purpose);
    trim(m.effect);
    trim(m.type_note);
    return m;
  }
};

ExprPtr expr_of(const SExprPtr& s, const ParseCtx& ctx);
DefPtr def_of(const SExprPtr& s, const ParseCtx& ctx);

std::vector<ExprPtr> expr_seq(const std::vector<SExprPtr>& items, size_t from,
                              const ParseCtx& ctx) {
  std::vector<ExprPtr> out;
  for (size_t i = from; i < items.size(); ++i) out.push_back(expr_of(items[i], ctx));
  return out;
}

ExprPtr while_of(const SExprPtr& s, const ParseCtx& ctx) {
  const auto& items = s->list().items;
  if (items.size() < 3)
    throw ParseError("while requires (invariant ...) and a nonempty body", s->pos,
                     "(while driver (invariant f) [(variant t)] stmt ...)");
  ExprPtr driver = expr_of(items[1], ctx);
  if (head_of(items[2]) != "invariant" || items[2]->list().items.size() != 2)
    throw ParseError("while requires (invariant ...) as its second element", items[2]->pos,
                     "(while driver (invariant f) [(variant t)] stmt ...)");
  FormulaPtr inv = formula_of(items[2]->list().items[1]);
  size_t body_from = 3;
  TermPtr variant;
  if (items.size() > 3 && head_of(items[3]) == "variant") {
    if (items[3]->list().items.size() != 2)
      throw ParseError("bad (variant t) clause", items[3]->pos, "(variant t)");
    variant = term_of(items[3]->list().items[1]);
    body_from = 4;
  }
  if (items.size() <= body_from)
    throw ParseError("while body is empty", s->pos);
  return mk_while(driver, inv, variant, expr_seq(items, body_from, ctx), s->pos);
}

ExprPtr expr_of(const SExprPtr& s, const ParseCtx& ctx) {
  if (s->is_atom()) {
    const auto& a = s->atom();
    if (a.is_string) return mk_estr(a.lexeme, s->pos);
    std::int64_t v;
    if (parse_int(a.lexeme, v)) return mk_eint(v, s->pos);
    if (looks_numeric(a.lexeme))
      throw ParseError("not an exact integer: '" + a.lexeme + "' (only exact integers are supported)",
                       s->pos);
    if (a.lexeme == "true" || a.lexeme == "#true" || a.lexeme == "#t")
      return mk_ebool(true, s->pos);
    if (a.lexeme == "false" || a.lexeme == "#false" || a.lexeme == "#f")
      return mk_ebool(false, s->pos);
    return mk_evar(a.lexeme, s->pos);
  }
  const auto& items = s->list().items;
  const std::string& h = head_of(s);
  if (h.empty()) throw ParseError("expected an expression", s->pos);
  if (h == "if") {
    if (items.size() != 4)
      throw ParseError("bad arity for (if test then else)", s->pos, "(if test then else)");
    return mk_if(expr_of(items[1], ctx), expr_of(items[2], ctx), expr_of(items[3], ctx), s->pos);
  }
  if (h == "cond") {
    if (items.size() < 2) throw ParseError("cond needs at least one clause", s->pos);
    std::vector<Expr::CondClause> clauses;
    ExprPtr else_body;
    for (size_t i = 1; i < items.size(); ++i) {
      if (!items[i]->is_list() || items[i]->list().items.size() != 2)
        throw ParseError("cond clause must be [test body]", items[i]->pos, "[test body]");
      const auto& cl = items[i]->list().items;
      if (cl[0]->is_atom() && !cl[0]->atom().is_string && cl[0]->atom().lexeme == "else") {
        if (i + 1 != items.size())
          throw ParseError("else must be the last cond clause", items[i]->pos);
        else_body = expr_of(cl[1], ctx);
      } else {
        clauses.push_back({expr_of(cl[0], ctx), expr_of(cl[1], ctx)});
      }
    }
    if (clauses.empty())
      throw ParseError("cond needs at least one non-else clause", s->pos);
    return mk_cond(std::move(clauses), else_body, s->pos);
  }
  if (h == "local") {
    if (items.size() != 3)
      throw ParseError("bad shape for (local [defs ...] body)", s->pos, "(local [defs ...] body)");
    if (!items[1]->is_list())
      throw ParseError("local definitions must be a list", items[1]->pos);
    std::vector<DefPtr> defs;
    for (const auto& d : items[1]->list().items) defs.push_back(def_of(d, ctx));
    for (const auto& d : defs)
      if (std::holds_alternative<Definition::CheckExpect>(d->node))
        throw ParseError("check-expect is not allowed inside local", items[1]->pos);
    return mk_local(std::move(defs), expr_of(items[2], ctx), s->pos);
  }
  if (h == "begin") {
    if (items.size() < 2) throw ParseError("begin body is empty", s->pos);
    return mk_begin(expr_seq(items, 1, ctx), s->pos);
  }
  if (h == "set!") {
    if (items.size() != 3)
      throw ParseError("bad arity for (set! name expr)", s->pos, "(set! name expr)");
    return mk_set(require_name(items[1], "set! target"), expr_of(items[2], ctx), s->pos);
  }
  if (h == "while") return while_of(s, ctx);
  if (h == "void") {
    if (items.size() != 1) throw ParseError("(void) takes no arguments", s->pos);
    return mk_evoid(s->pos);
  }
  if (h == "vector") return mk_vector_lit(expr_seq(items, 1, ctx), s->pos);
  if (h == "vector-ref") {
    if (items.size() != 3)
      throw ParseError("bad arity for (vector-ref v i)", s->pos, "(vector-ref v i)");
    return mk_vector_ref(expr_of(items[1], ctx), expr_of(items[2], ctx), s->pos);
  }
  if (h == "vector-set!") {
    if (items.size() != 4)
      throw ParseError("bad arity for (vector-set! v i e)", s->pos, "(vector-set! v i e)");
    return mk_vector_set(expr_of(items[1], ctx), expr_of(items[2], ctx), expr_of(items[3], ctx),
                         s->pos);
  }
  if (h == "vector-length") {
    if (items.size() != 2)
      throw ParseError("bad arity for (vector-length v)", s->pos, "(vector-length v)");
    return mk_vector_length(expr_of(items[1], ctx), s->pos);
  }
  if (h == "assert") {
    if (items.size() != 2) throw ParseError("bad arity for (assert f)", s->pos, "(assert f)");
    return mk_assert(formula_of(items[1]), s->pos);
  }
  if (h == "define" || h == "check-expect" || h == "contract")
    throw ParseError("'" + h + "' is a definition form, not an expression", s->pos);
  // Plain application; the operator must be a name.
  if (!items[0]->is_atom() || items[0]->atom().is_string || looks_numeric(items[0]->atom().lexeme))
    throw ParseError("operator must be a name (functions are not values)", items[0]->pos);
  return mk_app(h, expr_seq(items, 1, ctx), s->pos);
}

DefPtr def_of(const SExprPtr& s, const ParseCtx& ctx) {
  const std::string& h = head_of(s);
  const auto& items = s->list().items;
  if (h == "define") {
    if (items.size() != 3)
      throw ParseError("bad shape for define", s->pos,
                       "(define name expr) or (define (name params ...) body)");
    if (items[1]->is_list()) {
      const auto& header = items[1]->list().items;
      if (header.empty()) throw ParseError("empty function header", items[1]->pos);
      std::string name = require_name(header[0], "function name");
      std::vector<std::string> params;
      std::set<std::string> seen;
      for (size_t i = 1; i < header.size(); ++i) {
        std::string p = require_name(header[i], "parameter");
        if (!seen.insert(p).second)
          throw ParseError("duplicate parameter '" + p + "' in definition of " + name,
                           header[i]->pos);
        params.push_back(std::move(p));
      }
      return mk_fundef(name, std::move(params), expr_of(items[2], ctx), s->pos,
                       ctx.meta_for(name, s->pos, false));
    }
    std::string name = require_name(items[1], "variable name");
    return mk_vardef(name, expr_of(items[2], ctx), s->pos, ctx.meta_for(name, s->pos, true));
  }
  if (h == "check-expect") {
    if (items.size() != 3)
      throw ParseError("bad arity for (check-expect actual expected)", s->pos,
                       "(check-expect actual expected)");
    return mk_check_expect(expr_of(items[1], ctx), expr_of(items[2], ctx), s->pos);
  }
  if (h == "contract") {
    if (items.size() < 3)
      throw ParseError("bad shape for contract", s->pos,
                       "(contract name (requires f) (ensures f) (modifies v lo hi) "
                       "(invariant f) (variant t))");
    Definition::Contract c;
    c.name = require_name(items[1], "contract subject");
    for (size_t i = 2; i < items.size(); ++i) {
      const std::string& ch = head_of(items[i]);
      const auto& cl = items[i]->list().items;
      if (ch == "requires" && cl.size() == 2) {
        c.requires_fs.push_back(formula_of(cl[1]));
      } else if (ch == "ensures" && cl.size() == 2) {
        c.ensures_fs.push_back(formula_of(cl[1]));
      } else if (ch == "modifies" && cl.size() == 4) {
        c.modifies = Definition::Modifies{require_name(cl[1], "modified vector"),
                                          term_of(cl[2]), term_of(cl[3])};
      } else if (ch == "invariant" && cl.size() == 2) {
        c.invariant = formula_of(cl[1]);
      } else if (ch == "variant" && cl.size() == 2) {
        c.variant = term_of(cl[1]);
      } else {
        throw ParseError("unknown contract clause", items[i]->pos,
                         "(requires f) | (ensures f) | (modifies v lo hi) | (invariant f) | "
                         "(variant t)");
      }
    }
    return mk_contract(std::move(c), s->pos);
  }
  throw ParseError("expected a definition (define/check-expect/contract)", s->pos);
}

}  // namespace

Program parse_program(const std::vector<SExprPtr>& forms, const std::vector<Comment>& comments) {
  ParseCtx ctx;
  for (const auto& c : comments) {
    auto it = ctx.comment_lines.find(c.pos.line);
    if (it == ctx.comment_lines.end())
      ctx.comment_lines[c.pos.line] = c.text;
    else
      it->second += " " + c.text;
  }
  Program p;
  std::set<std::string> top_names;
  for (const auto& f : forms) {
    if (!f->is_list()) throw ParseError("expected a definition at top level", f->pos);
    DefPtr d = def_of(f, ctx);
    if (const auto* fd = std::get_if<Definition::FunDef>(&d->node)) {
      if (!top_names.insert(fd->name).second)
        throw ParseError("duplicate top-level name '" + fd->name + "'", f->pos);
    } else if (const auto* vd = std::get_if<Definition::VarDef>(&d->node)) {
      if (!top_names.insert(vd->name).second)
        throw ParseError("duplicate top-level name '" + vd->name + "'", f->pos);
    }
    p.defs.push_back(std::move(d));
  }
  return p;
}

Program parse_program_text(const std::string& text) {
  ReadResult r = read_sexprs(text);
  return parse_program(r.forms, r.comments);
}

FormulaPtr parse_formula(const SExprPtr& s) { return formula_of(s); }
TermPtr parse_term(const SExprPtr& s) { return term_of(s); }
ExprPtr parse_expr(const SExprPtr& s) {
  ParseCtx ctx;
  return expr_of(s, ctx);
}

}  // namespace loopsmith
