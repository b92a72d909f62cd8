#include "loopsmith/ast.hpp"

#include <algorithm>

namespace loopsmith {

std::string cmp_op_name(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Factories

TermPtr mk_int(std::int64_t v) {
  return std::make_shared<Term>(Term::IntConst{v});
}
TermPtr mk_tvar(std::string name) {
  return std::make_shared<Term>(Term::TVar{std::move(name)});
}
TermPtr mk_add(std::vector<TermPtr> ts) {
  return std::make_shared<Term>(Term::Add{std::move(ts)});
}
TermPtr mk_sub(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term::Sub{std::move(a), std::move(b)});
}
TermPtr mk_mul(std::vector<TermPtr> ts) {
  return std::make_shared<Term>(Term::Mul{std::move(ts)});
}
TermPtr mk_sub1(TermPtr t) { return std::make_shared<Term>(Term::Sub1{std::move(t)}); }
TermPtr mk_add1(TermPtr t) { return std::make_shared<Term>(Term::Add1{std::move(t)}); }
TermPtr mk_bigprod(std::string index, TermPtr lo, TermPtr hi, TermPtr body) {
  return std::make_shared<Term>(
      Term::BigProd{std::move(index), std::move(lo), std::move(hi), std::move(body)});
}
TermPtr mk_bigsum(std::string index, TermPtr lo, TermPtr hi, TermPtr body) {
  return std::make_shared<Term>(
      Term::BigSum{std::move(index), std::move(lo), std::move(hi), std::move(body)});
}
TermPtr mk_vref(std::string vec, TermPtr idx) {
  return std::make_shared<Term>(Term::VRef{std::move(vec), std::move(idx)});
}
TermPtr mk_vlen(std::string vec) {
  return std::make_shared<Term>(Term::VLen{std::move(vec)});
}

FormulaPtr mk_cmp(CmpOp op, TermPtr lhs, TermPtr rhs) {
  return std::make_shared<Formula>(Formula::Cmp{op, std::move(lhs), std::move(rhs)});
}
FormulaPtr mk_and(std::vector<FormulaPtr> fs) {
  return std::make_shared<Formula>(Formula::And{std::move(fs)});
}
FormulaPtr mk_or(std::vector<FormulaPtr> fs) {
  return std::make_shared<Formula>(Formula::Or{std::move(fs)});
}
FormulaPtr mk_not(FormulaPtr f) {
  return std::make_shared<Formula>(Formula::Not{std::move(f)});
}
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula::Implies{std::move(a), std::move(b)});
}
FormulaPtr mk_sorted(std::string vec, TermPtr lo, TermPtr hi) {
  return std::make_shared<Formula>(
      Formula::SortedRange{std::move(vec), std::move(lo), std::move(hi)});
}
FormulaPtr mk_true() { return std::make_shared<Formula>(Formula::TrueF{}); }
FormulaPtr mk_false() { return std::make_shared<Formula>(Formula::FalseF{}); }

ExprPtr mk_eint(std::int64_t v, SourcePos p) {
  return std::make_shared<Expr>(Expr::IntLit{v}, p);
}
ExprPtr mk_ebool(bool v, SourcePos p) {
  return std::make_shared<Expr>(Expr::BoolLit{v}, p);
}
ExprPtr mk_estr(std::string v, SourcePos p) {
  return std::make_shared<Expr>(Expr::StrLit{std::move(v)}, p);
}
ExprPtr mk_evoid(SourcePos p) { return std::make_shared<Expr>(Expr::VoidLit{}, p); }
ExprPtr mk_evar(std::string name, SourcePos p) {
  return std::make_shared<Expr>(Expr::Var{std::move(name)}, p);
}
ExprPtr mk_app(std::string op, std::vector<ExprPtr> args, SourcePos p) {
  return std::make_shared<Expr>(Expr::App{std::move(op), std::move(args)}, p);
}
ExprPtr mk_if(ExprPtr t, ExprPtr a, ExprPtr b, SourcePos p) {
  return std::make_shared<Expr>(Expr::If{std::move(t), std::move(a), std::move(b)}, p);
}
ExprPtr mk_cond(std::vector<Expr::CondClause> cls, ExprPtr else_body, SourcePos p) {
  return std::make_shared<Expr>(Expr::Cond{std::move(cls), std::move(else_body)}, p);
}
ExprPtr mk_local(std::vector<DefPtr> defs, ExprPtr body, SourcePos p) {
  return std::make_shared<Expr>(Expr::Local{std::move(defs), std::move(body)}, p);
}
ExprPtr mk_begin(std::vector<ExprPtr> stmts, SourcePos p) {
  return std::make_shared<Expr>(Expr::Begin{std::move(stmts)}, p);
}
ExprPtr mk_set(std::string target, ExprPtr rhs, SourcePos p) {
  return std::make_shared<Expr>(Expr::SetBang{std::move(target), std::move(rhs)}, p);
}
ExprPtr mk_while(ExprPtr driver, FormulaPtr inv, TermPtr variant,
                 std::vector<ExprPtr> body, SourcePos p) {
  return std::make_shared<Expr>(
      Expr::While{std::move(driver), std::move(inv), std::move(variant), std::move(body)}, p);
}
ExprPtr mk_vector_lit(std::vector<ExprPtr> elems, SourcePos p) {
  return std::make_shared<Expr>(Expr::VectorLit{std::move(elems)}, p);
}
ExprPtr mk_vector_ref(ExprPtr vec, ExprPtr idx, SourcePos p) {
  return std::make_shared<Expr>(Expr::VectorRef{std::move(vec), std::move(idx)}, p);
}
ExprPtr mk_vector_set(ExprPtr vec, ExprPtr idx, ExprPtr rhs, SourcePos p) {
  return std::make_shared<Expr>(
      Expr::VectorSetBang{std::move(vec), std::move(idx), std::move(rhs)}, p);
}
ExprPtr mk_vector_length(ExprPtr vec, SourcePos p) {
  return std::make_shared<Expr>(Expr::VectorLength{std::move(vec)}, p);
}
ExprPtr mk_assert(FormulaPtr f, SourcePos p) {
  return std::make_shared<Expr>(Expr::Assert{std::move(f)}, p);
}

DefPtr mk_fundef(std::string name, std::vector<std::string> params, ExprPtr body,
                 SourcePos p, DefMeta m) {
  return std::make_shared<Definition>(
      Definition::FunDef{std::move(name), std::move(params), std::move(body)}, p,
      std::move(m));
}
DefPtr mk_vardef(std::string name, ExprPtr init, SourcePos p, DefMeta m) {
  return std::make_shared<Definition>(
      Definition::VarDef{std::move(name), std::move(init)}, p, std::move(m));
}
DefPtr mk_check_expect(ExprPtr actual, ExprPtr expected, SourcePos p) {
  return std::make_shared<Definition>(
      Definition::CheckExpect{std::move(actual), std::move(expected)}, p);
}
DefPtr mk_contract(Definition::Contract c, SourcePos p) {
  return std::make_shared<Definition>(std::move(c), p);
}

// ---------------------------------------------------------------------------
// Structural equality

namespace {

template <class T>
bool eq_vec(const std::vector<T>& a, const std::vector<T>& b,
            bool (*elem_eq)(const T&, const T&)) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!elem_eq(a[i], b[i])) return false;
  return true;
}

bool term_eq(const TermPtr& a, const TermPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
bool expr_eq(const ExprPtr& a, const ExprPtr& b);
bool def_eq(const DefPtr& a, const DefPtr& b);

bool opt_term_eq(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return !a && !b;
  return term_eq(a, b);
}
bool opt_formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return !a && !b;
  return formula_eq(a, b);
}
bool opt_expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return expr_eq(a, b);
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  using namespace std;
  return visit(
      [&](const auto& x) -> bool {
        using T = decay_t<decltype(x)>;
        const T& y = get<T>(b->node);
        if constexpr (is_same_v<T, Term::IntConst>) {
          return x.value == y.value;
        } else if constexpr (is_same_v<T, Term::TVar>) {
          return x.name == y.name;
        } else if constexpr (is_same_v<T, Term::Add> || is_same_v<T, Term::Mul>) {
          const auto& xs = [&] { if constexpr (is_same_v<T, Term::Add>) return x.terms; else return x.factors; }();
          const auto& ys = [&] { if constexpr (is_same_v<T, Term::Add>) return y.terms; else return y.factors; }();
          return eq_vec<TermPtr>(xs, ys, +[](const TermPtr& p, const TermPtr& q) { return term_eq(p, q); });
        } else if constexpr (is_same_v<T, Term::Sub>) {
          return term_eq(x.a, y.a) && term_eq(x.b, y.b);
        } else if constexpr (is_same_v<T, Term::Sub1> || is_same_v<T, Term::Add1>) {
          return term_eq(x.t, y.t);
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          return x.index == y.index && term_eq(x.lo, y.lo) && term_eq(x.hi, y.hi) &&
                 term_eq(x.body, y.body);
        } else if constexpr (is_same_v<T, Term::VRef>) {
          return x.vec == y.vec && term_eq(x.idx, y.idx);
        } else {  // VLen
          return x.vec == y.vec;
        }
      },
      a->node);
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  using namespace std;
  return visit(
      [&](const auto& x) -> bool {
        using T = decay_t<decltype(x)>;
        const T& y = get<T>(b->node);
        if constexpr (is_same_v<T, Formula::Cmp>) {
          return x.op == y.op && term_eq(x.lhs, y.lhs) && term_eq(x.rhs, y.rhs);
        } else if constexpr (is_same_v<T, Formula::And> || is_same_v<T, Formula::Or>) {
          return eq_vec<FormulaPtr>(x.fs, y.fs, +[](const FormulaPtr& p, const FormulaPtr& q) { return formula_eq(p, q); });
        } else if constexpr (is_same_v<T, Formula::Not>) {
          return formula_eq(x.f, y.f);
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          return formula_eq(x.a, y.a) && formula_eq(x.b, y.b);
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          return x.vec == y.vec && term_eq(x.lo, y.lo) && term_eq(x.hi, y.hi);
        } else {
          return true;  // TrueF / FalseF
        }
      },
      a->node);
}

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  using namespace std;
  return visit(
      [&](const auto& x) -> bool {
        using T = decay_t<decltype(x)>;
        const T& y = get<T>(b->node);
        if constexpr (is_same_v<T, Expr::IntLit>) {
          return x.value == y.value;
        } else if constexpr (is_same_v<T, Expr::BoolLit>) {
          return x.value == y.value;
        } else if constexpr (is_same_v<T, Expr::StrLit>) {
          return x.value == y.value;
        } else if constexpr (is_same_v<T, Expr::VoidLit>) {
          return true;
        } else if constexpr (is_same_v<T, Expr::Var>) {
          return x.name == y.name;
        } else if constexpr (is_same_v<T, Expr::App>) {
          return x.op == y.op &&
                 eq_vec<ExprPtr>(x.args, y.args, +[](const ExprPtr& p, const ExprPtr& q) { return expr_eq(p, q); });
        } else if constexpr (is_same_v<T, Expr::If>) {
          return expr_eq(x.test, y.test) && expr_eq(x.then_e, y.then_e) &&
                 expr_eq(x.else_e, y.else_e);
        } else if constexpr (is_same_v<T, Expr::Cond>) {
          if (x.clauses.size() != y.clauses.size()) return false;
          for (size_t i = 0; i < x.clauses.size(); ++i)
            if (!expr_eq(x.clauses[i].test, y.clauses[i].test) ||
                !expr_eq(x.clauses[i].body, y.clauses[i].body))
              return false;
          return opt_expr_eq(x.else_body, y.else_body);
        } else if constexpr (is_same_v<T, Expr::Local>) {
          return eq_vec<DefPtr>(x.defs, y.defs, +[](const DefPtr& p, const DefPtr& q) { return def_eq(p, q); }) &&
                 expr_eq(x.body, y.body);
        } else if constexpr (is_same_v<T, Expr::Begin>) {
          return eq_vec<ExprPtr>(x.stmts, y.stmts, +[](const ExprPtr& p, const ExprPtr& q) { return expr_eq(p, q); });
        } else if constexpr (is_same_v<T, Expr::SetBang>) {
          return x.target == y.target && expr_eq(x.rhs, y.rhs);
        } else if constexpr (is_same_v<T, Expr::While>) {
          return expr_eq(x.driver, y.driver) && formula_eq(x.invariant, y.invariant) &&
                 opt_term_eq(x.variant, y.variant) &&
                 eq_vec<ExprPtr>(x.body, y.body, +[](const ExprPtr& p, const ExprPtr& q) { return expr_eq(p, q); });
        } else if constexpr (is_same_v<T, Expr::VectorLit>) {
          return eq_vec<ExprPtr>(x.elems, y.elems, +[](const ExprPtr& p, const ExprPtr& q) { return expr_eq(p, q); });
        } else if constexpr (is_same_v<T, Expr::VectorRef>) {
          return expr_eq(x.vec, y.vec) && expr_eq(x.idx, y.idx);
        } else if constexpr (is_same_v<T, Expr::VectorSetBang>) {
          return expr_eq(x.vec, y.vec) && expr_eq(x.idx, y.idx) && expr_eq(x.rhs, y.rhs);
        } else if constexpr (is_same_v<T, Expr::VectorLength>) {
          return expr_eq(x.vec, y.vec);
        } else {  // Assert
          return formula_eq(x.formula, y.formula);
        }
      },
      a->node);
}

bool def_eq(const DefPtr& a, const DefPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  using namespace std;
  return visit(
      [&](const auto& x) -> bool {
        using T = decay_t<decltype(x)>;
        const T& y = get<T>(b->node);
        if constexpr (is_same_v<T, Definition::FunDef>) {
          return x.name == y.name && x.params == y.params && expr_eq(x.body, y.body);
        } else if constexpr (is_same_v<T, Definition::VarDef>) {
          return x.name == y.name && expr_eq(x.init, y.init);
        } else if constexpr (is_same_v<T, Definition::CheckExpect>) {
          return expr_eq(x.actual, y.actual) && expr_eq(x.expected, y.expected);
        } else {  // Contract
          if (x.name != y.name) return false;
          if (!eq_vec<FormulaPtr>(x.requires_fs, y.requires_fs, +[](const FormulaPtr& p, const FormulaPtr& q) { return formula_eq(p, q); }))
            return false;
          if (!eq_vec<FormulaPtr>(x.ensures_fs, y.ensures_fs, +[](const FormulaPtr& p, const FormulaPtr& q) { return formula_eq(p, q); }))
            return false;
          if (x.modifies.has_value() != y.modifies.has_value()) return false;
          if (x.modifies &&
              !(x.modifies->vec == y.modifies->vec && term_eq(x.modifies->lo, y.modifies->lo) &&
                term_eq(x.modifies->hi, y.modifies->hi)))
            return false;
          return opt_formula_eq(x.invariant, y.invariant) && opt_term_eq(x.variant, y.variant);
        }
      },
      a->node);
}

}  // namespace

bool equal(const TermPtr& a, const TermPtr& b) { return term_eq(a, b); }
bool equal(const FormulaPtr& a, const FormulaPtr& b) { return formula_eq(a, b); }
bool equal(const ExprPtr& a, const ExprPtr& b) { return expr_eq(a, b); }
bool equal(const DefPtr& a, const DefPtr& b) { return def_eq(a, b); }
bool equal(const Program& a, const Program& b) {
  return eq_vec<DefPtr>(a.defs, b.defs, +[](const DefPtr& p, const DefPtr& q) { return def_eq(p, q); });
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void term_fv(const TermPtr& t, std::set<std::string>& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::IntConst>) {
        } else if constexpr (is_same_v<T, Term::TVar>) {
          out.insert(x.name);
        } else if constexpr (is_same_v<T, Term::Add>) {
          for (auto& s : x.terms) term_fv(s, out);
        } else if constexpr (is_same_v<T, Term::Mul>) {
          for (auto& s : x.factors) term_fv(s, out);
        } else if constexpr (is_same_v<T, Term::Sub>) {
          term_fv(x.a, out);
          term_fv(x.b, out);
        } else if constexpr (is_same_v<T, Term::Sub1> || is_same_v<T, Term::Add1>) {
          term_fv(x.t, out);
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          term_fv(x.lo, out);
          term_fv(x.hi, out);
          std::set<std::string> body;
          term_fv(x.body, body);
          body.erase(x.index);
          out.insert(body.begin(), body.end());
        } else if constexpr (is_same_v<T, Term::VRef>) {
          out.insert(x.vec);
          term_fv(x.idx, out);
        } else {  // VLen
          out.insert(x.vec);
        }
      },
      t->node);
}

void formula_fv(const FormulaPtr& f, std::set<std::string>& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          term_fv(x.lhs, out);
          term_fv(x.rhs, out);
        } else if constexpr (is_same_v<T, Formula::And> || is_same_v<T, Formula::Or>) {
          for (auto& g : x.fs) formula_fv(g, out);
        } else if constexpr (is_same_v<T, Formula::Not>) {
          formula_fv(x.f, out);
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          formula_fv(x.a, out);
          formula_fv(x.b, out);
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          out.insert(x.vec);
          term_fv(x.lo, out);
          term_fv(x.hi, out);
        }
      },
      f->node);
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  term_fv(t, out);
  return out;
}
std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  formula_fv(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string c = base + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  using namespace std;
  return visit(
      [&](const auto& x) -> TermPtr {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::IntConst>) {
          return t;
        } else if constexpr (is_same_v<T, Term::TVar>) {
          return x.name == var ? repl : t;
        } else if constexpr (is_same_v<T, Term::Add>) {
          std::vector<TermPtr> ts;
          ts.reserve(x.terms.size());
          for (auto& s : x.terms) ts.push_back(substitute(s, var, repl));
          return mk_add(std::move(ts));
        } else if constexpr (is_same_v<T, Term::Mul>) {
          std::vector<TermPtr> ts;
          ts.reserve(x.factors.size());
          for (auto& s : x.factors) ts.push_back(substitute(s, var, repl));
          return mk_mul(std::move(ts));
        } else if constexpr (is_same_v<T, Term::Sub>) {
          return mk_sub(substitute(x.a, var, repl), substitute(x.b, var, repl));
        } else if constexpr (is_same_v<T, Term::Sub1>) {
          return mk_sub1(substitute(x.t, var, repl));
        } else if constexpr (is_same_v<T, Term::Add1>) {
          return mk_add1(substitute(x.t, var, repl));
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          TermPtr lo = substitute(x.lo, var, repl);
          TermPtr hi = substitute(x.hi, var, repl);
          std::string index = x.index;
          TermPtr body = x.body;
          if (var != index) {
            auto repl_fv = free_vars(repl);
            if (repl_fv.count(index) && free_vars(body).count(var)) {
              // The binder would capture a free variable of the replacement;
              // rename it first.
              auto used = free_vars(body);
              used.insert(repl_fv.begin(), repl_fv.end());
              used.insert(var);
              std::string renamed = fresh_name(index, used);
              body = substitute(body, index, mk_tvar(renamed));
              index = renamed;
            }
            body = substitute(body, var, repl);
          }
          if constexpr (is_same_v<T, Term::BigProd>)
            return mk_bigprod(index, lo, hi, body);
          else
            return mk_bigsum(index, lo, hi, body);
        } else if constexpr (is_same_v<T, Term::VRef>) {
          return mk_vref(x.vec, substitute(x.idx, var, repl));
        } else {  // VLen
          return t;
        }
      },
      t->node);
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& repl) {
  using namespace std;
  return visit(
      [&](const auto& x) -> FormulaPtr {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          return mk_cmp(x.op, substitute(x.lhs, var, repl), substitute(x.rhs, var, repl));
        } else if constexpr (is_same_v<T, Formula::And>) {
          std::vector<FormulaPtr> fs;
          for (auto& g : x.fs) fs.push_back(substitute(g, var, repl));
          return mk_and(std::move(fs));
        } else if constexpr (is_same_v<T, Formula::Or>) {
          std::vector<FormulaPtr> fs;
          for (auto& g : x.fs) fs.push_back(substitute(g, var, repl));
          return mk_or(std::move(fs));
        } else if constexpr (is_same_v<T, Formula::Not>) {
          return mk_not(substitute(x.f, var, repl));
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          return mk_implies(substitute(x.a, var, repl), substitute(x.b, var, repl));
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          return mk_sorted(x.vec, substitute(x.lo, var, repl), substitute(x.hi, var, repl));
        } else {
          return f;  // TrueF / FalseF
        }
      },
      f->node);
}

TermPtr rename_vector(const TermPtr& t, const std::string& from, const std::string& to) {
  using namespace std;
  return visit(
      [&](const auto& x) -> TermPtr {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::VRef>) {
          return mk_vref(x.vec == from ? to : x.vec, rename_vector(x.idx, from, to));
        } else if constexpr (is_same_v<T, Term::VLen>) {
          return x.vec == from ? mk_vlen(to) : t;
        } else if constexpr (is_same_v<T, Term::Add>) {
          std::vector<TermPtr> ts;
          for (auto& s : x.terms) ts.push_back(rename_vector(s, from, to));
          return mk_add(std::move(ts));
        } else if constexpr (is_same_v<T, Term::Mul>) {
          std::vector<TermPtr> ts;
          for (auto& s : x.factors) ts.push_back(rename_vector(s, from, to));
          return mk_mul(std::move(ts));
        } else if constexpr (is_same_v<T, Term::Sub>) {
          return mk_sub(rename_vector(x.a, from, to), rename_vector(x.b, from, to));
        } else if constexpr (is_same_v<T, Term::Sub1>) {
          return mk_sub1(rename_vector(x.t, from, to));
        } else if constexpr (is_same_v<T, Term::Add1>) {
          return mk_add1(rename_vector(x.t, from, to));
        } else if constexpr (is_same_v<T, Term::BigProd>) {
          return mk_bigprod(x.index, rename_vector(x.lo, from, to),
                            rename_vector(x.hi, from, to), rename_vector(x.body, from, to));
        } else if constexpr (is_same_v<T, Term::BigSum>) {
          return mk_bigsum(x.index, rename_vector(x.lo, from, to),
                           rename_vector(x.hi, from, to), rename_vector(x.body, from, to));
        } else {
          return t;
        }
      },
      t->node);
}

FormulaPtr rename_vector(const FormulaPtr& f, const std::string& from, const std::string& to) {
  using namespace std;
  return visit(
      [&](const auto& x) -> FormulaPtr {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          return mk_cmp(x.op, rename_vector(x.lhs, from, to), rename_vector(x.rhs, from, to));
        } else if constexpr (is_same_v<T, Formula::And>) {
          std::vector<FormulaPtr> fs;
          for (auto& g : x.fs) fs.push_back(rename_vector(g, from, to));
          return mk_and(std::move(fs));
        } else if constexpr (is_same_v<T, Formula::Or>) {
          std::vector<FormulaPtr> fs;
          for (auto& g : x.fs) fs.push_back(rename_vector(g, from, to));
          return mk_or(std::move(fs));
        } else if constexpr (is_same_v<T, Formula::Not>) {
          return mk_not(rename_vector(x.f, from, to));
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          return mk_implies(rename_vector(x.a, from, to), rename_vector(x.b, from, to));
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          return mk_sorted(x.vec == from ? to : x.vec, rename_vector(x.lo, from, to),
                           rename_vector(x.hi, from, to));
        } else {
          return f;
        }
      },
      f->node);
}

// ---------------------------------------------------------------------------
// Name collection

namespace {

void collect_term(const TermPtr& t, std::set<std::string>& out) {
  auto fv = free_vars(t);
  out.insert(fv.begin(), fv.end());
  if (auto* bp = std::get_if<Term::BigProd>(&t->node)) out.insert(bp->index);
  if (auto* bs = std::get_if<Term::BigSum>(&t->node)) out.insert(bs->index);
}

void collect_formula(const FormulaPtr& f, std::set<std::string>& out) {
  auto fv = free_vars(f);
  out.insert(fv.begin(), fv.end());
}

}  // namespace

void collect_names(const ExprPtr& e, std::set<std::string>& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Expr::Var>) {
          out.insert(x.name);
        } else if constexpr (is_same_v<T, Expr::App>) {
          out.insert(x.op);
          for (auto& a : x.args) collect_names(a, out);
        } else if constexpr (is_same_v<T, Expr::If>) {
          collect_names(x.test, out);
          collect_names(x.then_e, out);
          collect_names(x.else_e, out);
        } else if constexpr (is_same_v<T, Expr::Cond>) {
          for (auto& c : x.clauses) {
            collect_names(c.test, out);
            collect_names(c.body, out);
          }
          if (x.else_body) collect_names(x.else_body, out);
        } else if constexpr (is_same_v<T, Expr::Local>) {
          for (auto& d : x.defs) collect_names(d, out);
          collect_names(x.body, out);
        } else if constexpr (is_same_v<T, Expr::Begin>) {
          for (auto& s : x.stmts) collect_names(s, out);
        } else if constexpr (is_same_v<T, Expr::SetBang>) {
          out.insert(x.target);
          collect_names(x.rhs, out);
        } else if constexpr (is_same_v<T, Expr::While>) {
          collect_names(x.driver, out);
          collect_formula(x.invariant, out);
          if (x.variant) collect_term(x.variant, out);
          for (auto& s : x.body) collect_names(s, out);
        } else if constexpr (is_same_v<T, Expr::VectorLit>) {
          for (auto& s : x.elems) collect_names(s, out);
        } else if constexpr (is_same_v<T, Expr::VectorRef>) {
          collect_names(x.vec, out);
          collect_names(x.idx, out);
        } else if constexpr (is_same_v<T, Expr::VectorSetBang>) {
          collect_names(x.vec, out);
          collect_names(x.idx, out);
          collect_names(x.rhs, out);
        } else if constexpr (is_same_v<T, Expr::VectorLength>) {
          collect_names(x.vec, out);
        } else if constexpr (is_same_v<T, Expr::Assert>) {
          collect_formula(x.formula, out);
        }
      },
      e->node);
}

void collect_names(const DefPtr& d, std::set<std::string>& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Definition::FunDef>) {
          out.insert(x.name);
          for (auto& p : x.params) out.insert(p);
          collect_names(x.body, out);
        } else if constexpr (is_same_v<T, Definition::VarDef>) {
          out.insert(x.name);
          collect_names(x.init, out);
        } else if constexpr (is_same_v<T, Definition::CheckExpect>) {
          collect_names(x.actual, out);
          collect_names(x.expected, out);
        } else {  // Contract
          out.insert(x.name);
          for (auto& f : x.requires_fs) collect_formula(f, out);
          for (auto& f : x.ensures_fs) collect_formula(f, out);
          if (x.invariant) collect_formula(x.invariant, out);
          if (x.variant) collect_term(x.variant, out);
          if (x.modifies) out.insert(x.modifies->vec);
        }
      },
      d->node);
}

void collect_names(const Program& p, std::set<std::string>& out) {
  for (auto& d : p.defs) collect_names(d, out);
}

}  // namespace loopsmith
