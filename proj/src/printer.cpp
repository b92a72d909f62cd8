#include "loopsmith/printer.hpp"

#include <sstream>

namespace loopsmith {

namespace {

void term_sx(const TermPtr& t, std::string& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::IntConst>) {
          out += to_string(x.value);
        } else if constexpr (is_same_v<T, Term::TVar>) {
          out += x.name;
        } else if constexpr (is_same_v<T, Term::Add> || is_same_v<T, Term::Mul>) {
          out += is_same_v<T, Term::Add> ? "(+" : "(*";
          const auto& ts = [&] { if constexpr (is_same_v<T, Term::Add>) return x.terms; else return x.factors; }();
          for (auto& s : ts) {
            out += ' ';
            term_sx(s, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Term::Sub>) {
          out += "(- ";
          term_sx(x.a, out);
          out += ' ';
          term_sx(x.b, out);
          out += ')';
        } else if constexpr (is_same_v<T, Term::Sub1>) {
          out += "(sub1 ";
          term_sx(x.t, out);
          out += ')';
        } else if constexpr (is_same_v<T, Term::Add1>) {
          out += "(add1 ";
          term_sx(x.t, out);
          out += ')';
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          out += is_same_v<T, Term::BigProd> ? "(prod (" : "(sum (";
          out += x.index;
          out += ' ';
          term_sx(x.lo, out);
          out += ' ';
          term_sx(x.hi, out);
          out += ") ";
          term_sx(x.body, out);
          out += ')';
        } else if constexpr (is_same_v<T, Term::VRef>) {
          out += "(vref " + x.vec + " ";
          term_sx(x.idx, out);
          out += ')';
        } else {  // VLen
          out += "(vlen " + x.vec + ")";
        }
      },
      t->node);
}

void formula_sx(const FormulaPtr& f, std::string& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          out += "(" + cmp_op_name(x.op) + " ";
          term_sx(x.lhs, out);
          out += ' ';
          term_sx(x.rhs, out);
          out += ')';
        } else if constexpr (is_same_v<T, Formula::And> || is_same_v<T, Formula::Or>) {
          out += is_same_v<T, Formula::And> ? "(and" : "(or";
          for (auto& g : x.fs) {
            out += ' ';
            formula_sx(g, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Formula::Not>) {
          out += "(not ";
          formula_sx(x.f, out);
          out += ')';
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          out += "(implies ";
          formula_sx(x.a, out);
          out += ' ';
          formula_sx(x.b, out);
          out += ')';
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          out += "(sorted " + x.vec + " ";
          term_sx(x.lo, out);
          out += ' ';
          term_sx(x.hi, out);
          out += ')';
        } else if constexpr (is_same_v<T, Formula::TrueF>) {
          out += "true";
        } else {
          out += "false";
        }
      },
      f->node);
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string ind(int n) { return std::string(static_cast<size_t>(n), ' '); }

void expr_sx(const ExprPtr& e, int indent, std::string& out);

void def_sx(const DefPtr& d, int indent, std::string& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Definition::FunDef>) {
          out += "(define (" + x.name;
          for (auto& p : x.params) out += " " + p;
          out += ")\n" + ind(indent + 2);
          expr_sx(x.body, indent + 2, out);
          out += ')';
        } else if constexpr (is_same_v<T, Definition::VarDef>) {
          out += "(define " + x.name + " ";
          expr_sx(x.init, indent, out);
          out += ')';
        } else if constexpr (is_same_v<T, Definition::CheckExpect>) {
          out += "(check-expect ";
          expr_sx(x.actual, indent, out);
          out += ' ';
          expr_sx(x.expected, indent, out);
          out += ')';
        } else {  // Contract
          out += "(contract " + x.name;
          for (auto& f : x.requires_fs) {
            out += "\n" + ind(indent + 2) + "(requires ";
            formula_sx(f, out);
            out += ')';
          }
          for (auto& f : x.ensures_fs) {
            out += "\n" + ind(indent + 2) + "(ensures ";
            formula_sx(f, out);
            out += ')';
          }
          if (x.modifies) {
            out += "\n" + ind(indent + 2) + "(modifies " + x.modifies->vec + " ";
            term_sx(x.modifies->lo, out);
            out += ' ';
            term_sx(x.modifies->hi, out);
            out += ')';
          }
          if (x.invariant) {
            out += "\n" + ind(indent + 2) + "(invariant ";
            formula_sx(x.invariant, out);
            out += ')';
          }
          if (x.variant) {
            out += "\n" + ind(indent + 2) + "(variant ";
            term_sx(x.variant, out);
            out += ')';
          }
          out += ')';
        }
      },
      d->node);
}

void expr_sx(const ExprPtr& e, int indent, std::string& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Expr::IntLit>) {
          out += to_string(x.value);
        } else if constexpr (is_same_v<T, Expr::BoolLit>) {
          out += x.value ? "true" : "false";
        } else if constexpr (is_same_v<T, Expr::StrLit>) {
          out += quote_string(x.value);
        } else if constexpr (is_same_v<T, Expr::VoidLit>) {
          out += "(void)";
        } else if constexpr (is_same_v<T, Expr::Var>) {
          out += x.name;
        } else if constexpr (is_same_v<T, Expr::App>) {
          out += "(" + x.op;
          for (auto& a : x.args) {
            out += ' ';
            expr_sx(a, indent, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Expr::If>) {
          out += "(if ";
          expr_sx(x.test, indent, out);
          out += "\n" + ind(indent + 4);
          expr_sx(x.then_e, indent + 4, out);
          out += "\n" + ind(indent + 4);
          expr_sx(x.else_e, indent + 4, out);
          out += ')';
        } else if constexpr (is_same_v<T, Expr::Cond>) {
          out += "(cond";
          bool first = true;
          for (auto& c : x.clauses) {
            out += first ? " [" : "\n" + ind(indent + 6) + "[";
            first = false;
            expr_sx(c.test, indent + 6, out);
            out += ' ';
            expr_sx(c.body, indent + 6, out);
            out += ']';
          }
          if (x.else_body) {
            out += "\n" + ind(indent + 6) + "[else ";
            expr_sx(x.else_body, indent + 6, out);
            out += ']';
          }
          out += ')';
        } else if constexpr (is_same_v<T, Expr::Local>) {
          out += "(local [";
          for (size_t i = 0; i < x.defs.size(); ++i) {
            if (i) out += "\n" + ind(indent + 8);
            def_sx(x.defs[i], indent + 8, out);
          }
          out += "]\n" + ind(indent + 2);
          expr_sx(x.body, indent + 2, out);
          out += ')';
        } else if constexpr (is_same_v<T, Expr::Begin>) {
          out += "(begin";
          for (size_t i = 0; i < x.stmts.size(); ++i) {
            out += i == 0 ? " " : "\n" + ind(indent + 7);
            expr_sx(x.stmts[i], indent + 7, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Expr::SetBang>) {
          out += "(set! " + x.target + " ";
          expr_sx(x.rhs, indent, out);
          out += ')';
        } else if constexpr (is_same_v<T, Expr::While>) {
          out += "(while ";
          expr_sx(x.driver, indent, out);
          out += "\n" + ind(indent + 2) + "(invariant ";
          formula_sx(x.invariant, out);
          out += ')';
          if (x.variant) {
            out += "\n" + ind(indent + 2) + "(variant ";
            term_sx(x.variant, out);
            out += ')';
          }
          for (auto& s : x.body) {
            out += "\n" + ind(indent + 2);
            expr_sx(s, indent + 2, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Expr::VectorLit>) {
          out += "(vector";
          for (auto& s : x.elems) {
            out += ' ';
            expr_sx(s, indent, out);
          }
          out += ')';
        } else if constexpr (is_same_v<T, Expr::VectorRef>) {
          out += "(vector-ref ";
          expr_sx(x.vec, indent, out);
          out += ' ';
          expr_sx(x.idx, indent, out);
          out += ')';
        } else if constexpr (is_same_v<T, Expr::VectorSetBang>) {
          out += "(vector-set! ";
          expr_sx(x.vec, indent, out);
          out += ' ';
          expr_sx(x.idx, indent, out);
          out += ' ';
          expr_sx(x.rhs, indent, out);
          out += ')';
        } else if constexpr (is_same_v<T, Expr::VectorLength>) {
          out += "(vector-length ";
          expr_sx(x.vec, indent, out);
          out += ')';
        } else {  // Assert
          out += "(assert ";
          formula_sx(x.formula, out);
          out += ')';
        }
      },
      e->node);
}

// ---- pretty (display) form --------------------------------------------------

int prec_of(const TermPtr& t) {
  using namespace std;
  return visit(
      [&](const auto& x) -> int {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::Add> || is_same_v<T, Term::Sub>)
          return 1;
        else if constexpr (is_same_v<T, Term::Mul>)
          return 2;
        else
          return 3;
      },
      t->node);
}

void term_pretty(const TermPtr& t, std::string& out, int parent_prec) {
  using namespace std;
  int prec = prec_of(t);
  bool paren = prec < parent_prec;
  if (paren) out += '(';
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::IntConst>) {
          out += to_string(x.value);
        } else if constexpr (is_same_v<T, Term::TVar>) {
          out += x.name;
        } else if constexpr (is_same_v<T, Term::Add>) {
          for (size_t i = 0; i < x.terms.size(); ++i) {
            if (i) out += " + ";
            term_pretty(x.terms[i], out, 1);
          }
        } else if constexpr (is_same_v<T, Term::Sub>) {
          term_pretty(x.a, out, 1);
          out += " - ";
          term_pretty(x.b, out, 2);
        } else if constexpr (is_same_v<T, Term::Mul>) {
          for (size_t i = 0; i < x.factors.size(); ++i) {
            if (i) out += "*";
            term_pretty(x.factors[i], out, 2);
          }
        } else if constexpr (is_same_v<T, Term::Sub1>) {
          term_pretty(x.t, out, 2);
          out += " - 1";
        } else if constexpr (is_same_v<T, Term::Add1>) {
          term_pretty(x.t, out, 2);
          out += " + 1";
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          out += is_same_v<T, Term::BigProd> ? "Π_{" : "Σ_{";
          out += x.index + "=";
          term_pretty(x.lo, out, 0);
          out += "}^{";
          term_pretty(x.hi, out, 0);
          out += "} ";
          term_pretty(x.body, out, 3);
        } else if constexpr (is_same_v<T, Term::VRef>) {
          out += x.vec + "[";
          term_pretty(x.idx, out, 0);
          out += ']';
        } else {  // VLen
          out += "len(" + x.vec + ")";
        }
      },
      t->node);
  if (paren) out += ')';
}

void formula_pretty(const FormulaPtr& f, std::string& out, bool atomic_ctx) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          term_pretty(x.lhs, out, 1);
          switch (x.op) {
            case CmpOp::Eq: out += " = "; break;
            case CmpOp::Lt: out += " < "; break;
            case CmpOp::Le: out += " ≤ "; break;
            case CmpOp::Gt: out += " > "; break;
            case CmpOp::Ge: out += " ≥ "; break;
          }
          term_pretty(x.rhs, out, 1);
        } else if constexpr (is_same_v<T, Formula::And> || is_same_v<T, Formula::Or>) {
          const char* sep = is_same_v<T, Formula::And> ? " ∧ " : " ∨ ";
          if (atomic_ctx) out += '(';
          for (size_t i = 0; i < x.fs.size(); ++i) {
            if (i) out += sep;
            formula_pretty(x.fs[i], out, true);
          }
          if (atomic_ctx) out += ')';
        } else if constexpr (is_same_v<T, Formula::Not>) {
          out += "¬";
          formula_pretty(x.f, out, true);
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          if (atomic_ctx) out += '(';
          formula_pretty(x.a, out, true);
          out += " ⇒ ";
          formula_pretty(x.b, out, true);
          if (atomic_ctx) out += ')';
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          out += x.vec + "[";
          term_pretty(x.lo, out, 0);
          out += "..";
          term_pretty(x.hi, out, 0);
          out += "] sorted";
        } else if constexpr (is_same_v<T, Formula::TrueF>) {
          out += "true";
        } else {
          out += "false";
        }
      },
      f->node);
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  term_sx(t, out);
  return out;
}

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  formula_sx(f, out);
  return out;
}

std::string print_expr(const ExprPtr& e, int indent) {
  std::string out;
  expr_sx(e, indent, out);
  return out;
}

std::string print_definition(const DefPtr& d) {
  std::string out;
  def_sx(d, 0, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  for (size_t i = 0; i < p.defs.size(); ++i) {
    if (i) out += "\n\n";
    def_sx(p.defs[i], 0, out);
  }
  out += '\n';
  return out;
}

std::string pretty_term(const TermPtr& t) {
  std::string out;
  term_pretty(t, out, 0);
  return out;
}

std::string pretty_formula(const FormulaPtr& f) {
  std::string out;
  formula_pretty(f, out, false);
  return out;
}

}  // namespace loopsmith
