#pragma once

// Abstract syntax of the teaching language and its assertion language.
// All nodes are immutable after construction and shared via shared_ptr<const>.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "loopsmith/diag.hpp"

namespace loopsmith {

struct Term;
struct Formula;
struct Expr;
struct Definition;

using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using ExprPtr = std::shared_ptr<const Expr>;
using DefPtr = std::shared_ptr<const Definition>;

// ---------------------------------------------------------------------------
// Terms (integer-valued expressions of the assertion language)

enum class CmpOp { Eq, Lt, Le, Gt, Ge };

std::string cmp_op_name(CmpOp op);  // "=", "<", "<=", ">", ">="

struct Term {
  struct IntConst { std::int64_t value; };
  struct TVar { std::string name; };
  struct Add { std::vector<TermPtr> terms; };   // >= 2 operands
  struct Sub { TermPtr a, b; };
  struct Mul { std::vector<TermPtr> factors; }; // >= 2 operands
  struct Sub1 { TermPtr t; };
  struct Add1 { TermPtr t; };
  // Bounded big operators: the index is bound in `body` only; lo/hi must not
  // reference it.
  struct BigProd { std::string index; TermPtr lo, hi, body; };
  struct BigSum { std::string index; TermPtr lo, hi, body; };
  struct VRef { std::string vec; TermPtr idx; };
  struct VLen { std::string vec; };

  using Node = std::variant<IntConst, TVar, Add, Sub, Mul, Sub1, Add1,
                            BigProd, BigSum, VRef, VLen>;
  Node node;

  explicit Term(Node n) : node(std::move(n)) {}
};

TermPtr mk_int(std::int64_t v);
TermPtr mk_tvar(std::string name);
TermPtr mk_add(std::vector<TermPtr> ts);
TermPtr mk_sub(TermPtr a, TermPtr b);
TermPtr mk_mul(std::vector<TermPtr> ts);
TermPtr mk_sub1(TermPtr t);
TermPtr mk_add1(TermPtr t);
TermPtr mk_bigprod(std::string index, TermPtr lo, TermPtr hi, TermPtr body);
TermPtr mk_bigsum(std::string index, TermPtr lo, TermPtr hi, TermPtr body);
TermPtr mk_vref(std::string vec, TermPtr idx);
TermPtr mk_vlen(std::string vec);

// ---------------------------------------------------------------------------
// Formulas

struct Formula {
  struct Cmp { CmpOp op; TermPtr lhs, rhs; };
  struct And { std::vector<FormulaPtr> fs; };
  struct Or { std::vector<FormulaPtr> fs; };
  struct Not { FormulaPtr f; };
  struct Implies { FormulaPtr a, b; };
  // sorted(vec, lo, hi): non-decreasing on [lo..hi]; empty range (lo > hi)
  // denotes true.
  struct SortedRange { std::string vec; TermPtr lo, hi; };
  struct TrueF {};
  struct FalseF {};

  using Node =
      std::variant<Cmp, And, Or, Not, Implies, SortedRange, TrueF, FalseF>;
  Node node;

  explicit Formula(Node n) : node(std::move(n)) {}
};

FormulaPtr mk_cmp(CmpOp op, TermPtr lhs, TermPtr rhs);
FormulaPtr mk_and(std::vector<FormulaPtr> fs);
FormulaPtr mk_or(std::vector<FormulaPtr> fs);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_sorted(std::string vec, TermPtr lo, TermPtr hi);
FormulaPtr mk_true();
FormulaPtr mk_false();

// ---------------------------------------------------------------------------
// Expressions

struct Expr {
  struct IntLit { std::int64_t value; };
  struct BoolLit { bool value; };
  struct StrLit { std::string value; };
  struct VoidLit {};
  struct Var { std::string name; };
  struct App { std::string op; std::vector<ExprPtr> args; };
  struct If { ExprPtr test, then_e, else_e; };
  struct CondClause { ExprPtr test, body; };
  struct Cond {
    std::vector<CondClause> clauses;  // >= 1
    ExprPtr else_body;                // may be null
  };
  struct Local { std::vector<DefPtr> defs; ExprPtr body; };
  struct Begin { std::vector<ExprPtr> stmts; };  // nonempty
  struct SetBang { std::string target; ExprPtr rhs; };
  struct While {
    ExprPtr driver;
    FormulaPtr invariant;        // mandatory annotation
    TermPtr variant;             // optional, may be null
    std::vector<ExprPtr> body;   // nonempty
  };
  struct VectorLit { std::vector<ExprPtr> elems; };
  struct VectorRef { ExprPtr vec, idx; };
  struct VectorSetBang { ExprPtr vec, idx, rhs; };
  struct VectorLength { ExprPtr vec; };
  struct Assert { FormulaPtr formula; };

  using Node = std::variant<IntLit, BoolLit, StrLit, VoidLit, Var, App, If,
                            Cond, Local, Begin, SetBang, While, VectorLit,
                            VectorRef, VectorSetBang, VectorLength, Assert>;
  Node node;
  SourcePos pos;

  explicit Expr(Node n, SourcePos p = {}) : node(std::move(n)), pos(p) {}
};

ExprPtr mk_eint(std::int64_t v, SourcePos p = {});
ExprPtr mk_ebool(bool v, SourcePos p = {});
ExprPtr mk_estr(std::string v, SourcePos p = {});
ExprPtr mk_evoid(SourcePos p = {});
ExprPtr mk_evar(std::string name, SourcePos p = {});
ExprPtr mk_app(std::string op, std::vector<ExprPtr> args, SourcePos p = {});
ExprPtr mk_if(ExprPtr t, ExprPtr a, ExprPtr b, SourcePos p = {});
ExprPtr mk_cond(std::vector<Expr::CondClause> cls, ExprPtr else_body,
                SourcePos p = {});
ExprPtr mk_local(std::vector<DefPtr> defs, ExprPtr body, SourcePos p = {});
ExprPtr mk_begin(std::vector<ExprPtr> stmts, SourcePos p = {});
ExprPtr mk_set(std::string target, ExprPtr rhs, SourcePos p = {});
ExprPtr mk_while(ExprPtr driver, FormulaPtr inv, TermPtr variant,
                 std::vector<ExprPtr> body, SourcePos p = {});
ExprPtr mk_vector_lit(std::vector<ExprPtr> elems, SourcePos p = {});
ExprPtr mk_vector_ref(ExprPtr vec, ExprPtr idx, SourcePos p = {});
ExprPtr mk_vector_set(ExprPtr vec, ExprPtr idx, ExprPtr rhs, SourcePos p = {});
ExprPtr mk_vector_length(ExprPtr vec, SourcePos p = {});
ExprPtr mk_assert(FormulaPtr f, SourcePos p = {});

// ---------------------------------------------------------------------------
// Definitions and programs

// Free-text metadata recovered from comments adjacent to a definition; used
// only by the recipe report's presence checks, never semantically.
struct DefMeta {
  std::optional<std::string> signature;
  std::optional<std::string> purpose;
  std::optional<std::string> effect;
  std::optional<std::string> type_note;  // for state variables
};

struct Definition {
  struct FunDef {
    std::string name;
    std::vector<std::string> params;  // distinct
    ExprPtr body;
  };
  struct VarDef {
    std::string name;
    ExprPtr init;
  };
  struct CheckExpect {
    ExprPtr actual, expected;
  };
  struct Modifies {
    std::string vec;
    TermPtr lo, hi;
  };
  // Declared effect contract; `invariant`/`variant` annotate a recursive
  // helper so the transform passes can carry them onto an emitted while.
  struct Contract {
    std::string name;
    std::vector<FormulaPtr> requires_fs;
    std::vector<FormulaPtr> ensures_fs;
    std::optional<Modifies> modifies;
    FormulaPtr invariant;  // may be null
    TermPtr variant;       // may be null
  };

  using Node = std::variant<FunDef, VarDef, CheckExpect, Contract>;
  Node node;
  SourcePos pos;
  DefMeta meta;

  explicit Definition(Node n, SourcePos p = {}, DefMeta m = {})
      : node(std::move(n)), pos(p), meta(std::move(m)) {}
};

DefPtr mk_fundef(std::string name, std::vector<std::string> params,
                 ExprPtr body, SourcePos p = {}, DefMeta m = {});
DefPtr mk_vardef(std::string name, ExprPtr init, SourcePos p = {},
                 DefMeta m = {});
DefPtr mk_check_expect(ExprPtr actual, ExprPtr expected, SourcePos p = {});
DefPtr mk_contract(Definition::Contract c, SourcePos p = {});

struct Program {
  std::vector<DefPtr> defs;
};

// ---------------------------------------------------------------------------
// Structural equality (ignores source positions and comment metadata).

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const DefPtr& a, const DefPtr& b);
bool equal(const Program& a, const Program& b);

// ---------------------------------------------------------------------------
// Free variables and capture-avoiding substitution.
//
// Substitution replaces every free occurrence of `var`; big-operator bound
// indices are renamed to a fresh name when they would capture a free variable
// of the replacement.

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);

TermPtr substitute(const TermPtr& t, const std::string& var,
                   const TermPtr& replacement);
FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const TermPtr& replacement);

// Renames every occurrence of a vector name in sorted/vref/vlen atoms.
FormulaPtr rename_vector(const FormulaPtr& f, const std::string& from,
                         const std::string& to);
TermPtr rename_vector(const TermPtr& t, const std::string& from,
                      const std::string& to);

// All names mentioned anywhere in an expression/definition (used for
// fresh-name generation in the transform passes).
void collect_names(const ExprPtr& e, std::set<std::string>& out);
void collect_names(const DefPtr& d, std::set<std::string>& out);
void collect_names(const Program& p, std::set<std::string>& out);

// `base` if unused, else base with the smallest numeric suffix >= 2 that
// avoids `used`.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& used);

}  // namespace loopsmith
