#include "loopsmith/interp.hpp"

#include <algorithm>

#include "loopsmith/printer.hpp"

namespace loopsmith {

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::InvariantViolation: return "invariant-violation";
    case EventKind::VariantNonpositive: return "variant-nonpositive";
    case EventKind::VariantNondecreasing: return "variant-nondecreasing";
    case EventKind::AssertFailure: return "assert-failure";
    case EventKind::IterationCap: return "iteration-cap";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Formula evaluation over concrete values

namespace {

struct Scope {
  const NameLookup* base;
  std::vector<std::pair<std::string, Value>> overlay;  // big-op indices

  const Value* find(const std::string& name) const {
    for (auto it = overlay.rbegin(); it != overlay.rend(); ++it)
      if (it->first == name) return &it->second;
    return (*base)(name);
  }
};

std::int64_t expect_int_value(const Value& v, const std::string& what) {
  if (v.is_int()) return v.as_int();
  if (v.is_void())
    throw EvalError("uninitialized state variable (void) used in " + what);
  throw EvalError("type error: expected an integer in " + what + ", got " + print_value(v));
}

std::int64_t term_value(const TermPtr& t, Scope& sc);

std::int64_t lookup_int(const std::string& name, Scope& sc, const std::string& what) {
  const Value* v = sc.find(name);
  if (!v) throw EvalError("unbound name '" + name + "' in formula");
  return expect_int_value(*v, what);
}

const Value::Vec& lookup_vec(const std::string& name, Scope& sc) {
  const Value* v = sc.find(name);
  if (!v) throw EvalError("unbound name '" + name + "' in formula");
  if (!v->is_vec()) {
    if (v->is_void())
      throw EvalError("uninitialized state variable (void) used as a vector: " + name);
    throw EvalError("type error: '" + name + "' is not a vector");
  }
  return v->as_vec();
}

std::int64_t big_op_value(const std::string& index, const TermPtr& lo, const TermPtr& hi,
                          const TermPtr& body, bool is_prod, Scope& sc) {
  std::int64_t a = term_value(lo, sc);
  std::int64_t b = term_value(hi, sc);
  std::int64_t acc = is_prod ? 1 : 0;
  sc.overlay.emplace_back(index, Value(std::int64_t{0}));
  for (std::int64_t i = a; i <= b; ++i) {
    sc.overlay.back().second = Value(i);
    std::int64_t x = term_value(body, sc);
    acc = is_prod ? checked_mul(acc, x) : checked_add(acc, x);
  }
  sc.overlay.pop_back();
  return acc;
}

std::int64_t term_value(const TermPtr& t, Scope& sc) {
  using namespace std;
  return visit(
      [&](const auto& x) -> std::int64_t {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Term::IntConst>) {
          return x.value;
        } else if constexpr (is_same_v<T, Term::TVar>) {
          return lookup_int(x.name, sc, "arithmetic");
        } else if constexpr (is_same_v<T, Term::Add>) {
          std::int64_t acc = 0;
          for (auto& s : x.terms) acc = checked_add(acc, term_value(s, sc));
          return acc;
        } else if constexpr (is_same_v<T, Term::Sub>) {
          return checked_sub(term_value(x.a, sc), term_value(x.b, sc));
        } else if constexpr (is_same_v<T, Term::Mul>) {
          std::int64_t acc = 1;
          for (auto& s : x.factors) acc = checked_mul(acc, term_value(s, sc));
          return acc;
        } else if constexpr (is_same_v<T, Term::Sub1>) {
          return checked_sub(term_value(x.t, sc), 1);
        } else if constexpr (is_same_v<T, Term::Add1>) {
          return checked_add(term_value(x.t, sc), 1);
        } else if constexpr (is_same_v<T, Term::BigProd>) {
          return big_op_value(x.index, x.lo, x.hi, x.body, true, sc);
        } else if constexpr (is_same_v<T, Term::BigSum>) {
          return big_op_value(x.index, x.lo, x.hi, x.body, false, sc);
        } else if constexpr (is_same_v<T, Term::VRef>) {
          const auto& vec = lookup_vec(x.vec, sc);
          std::int64_t i = term_value(x.idx, sc);
          if (i < 0 || static_cast<size_t>(i) >= vec.cells->size())
            throw EvalError("vector index out of range: " + x.vec + "[" + std::to_string(i) + "]");
          return expect_int_value((*vec.cells)[static_cast<size_t>(i)], "vector element");
        } else {  // VLen
          return static_cast<std::int64_t>(lookup_vec(x.vec, sc).cells->size());
        }
      },
      t->node);
}

bool formula_value(const FormulaPtr& f, Scope& sc) {
  using namespace std;
  return visit(
      [&](const auto& x) -> bool {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          std::int64_t a = term_value(x.lhs, sc);
          std::int64_t b = term_value(x.rhs, sc);
          switch (x.op) {
            case CmpOp::Eq: return a == b;
            case CmpOp::Lt: return a < b;
            case CmpOp::Le: return a <= b;
            case CmpOp::Gt: return a > b;
            case CmpOp::Ge: return a >= b;
          }
          return false;
        } else if constexpr (is_same_v<T, Formula::And>) {
          for (auto& g : x.fs)
            if (!formula_value(g, sc)) return false;
          return true;
        } else if constexpr (is_same_v<T, Formula::Or>) {
          for (auto& g : x.fs)
            if (formula_value(g, sc)) return true;
          return false;
        } else if constexpr (is_same_v<T, Formula::Not>) {
          return !formula_value(x.f, sc);
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          if (!formula_value(x.a, sc)) return true;
          return formula_value(x.b, sc);
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          std::int64_t lo = term_value(x.lo, sc);
          std::int64_t hi = term_value(x.hi, sc);
          if (lo > hi) return true;  // empty range
          const auto& vec = lookup_vec(x.vec, sc);
          auto len = static_cast<std::int64_t>(vec.cells->size());
          if (lo < 0 || hi >= len)
            throw EvalError("sorted-range bounds out of range: " + x.vec + "[" +
                            std::to_string(lo) + ".." + std::to_string(hi) + "]");
          for (std::int64_t i = lo; i < hi; ++i) {
            std::int64_t a =
                expect_int_value((*vec.cells)[static_cast<size_t>(i)], "sorted range");
            std::int64_t b =
                expect_int_value((*vec.cells)[static_cast<size_t>(i + 1)], "sorted range");
            if (a > b) return false;
          }
          return true;
        } else if constexpr (is_same_v<T, Formula::TrueF>) {
          return true;
        } else {
          return false;
        }
      },
      f->node);
}

}  // namespace

bool eval_formula(const FormulaPtr& f, const NameLookup& scope) {
  Scope sc{&scope, {}};
  return formula_value(f, sc);
}

std::int64_t eval_term_concrete(const TermPtr& t, const NameLookup& scope) {
  Scope sc{&scope, {}};
  return term_value(t, sc);
}

namespace {

NameLookup store_lookup(const std::map<std::string, std::int64_t>& store,
                        std::map<std::string, Value>& scratch) {
  scratch.clear();
  for (const auto& [k, v] : store) scratch.emplace(k, Value(v));
  return [&scratch](const std::string& n) -> const Value* {
    auto it = scratch.find(n);
    return it == scratch.end() ? nullptr : &it->second;
  };
}

}  // namespace

bool eval_formula(const FormulaPtr& f, const std::map<std::string, std::int64_t>& store) {
  std::map<std::string, Value> scratch;
  return eval_formula(f, store_lookup(store, scratch));
}

std::int64_t eval_term_concrete(const TermPtr& t,
                                const std::map<std::string, std::int64_t>& store) {
  std::map<std::string, Value> scratch;
  return eval_term_concrete(t, store_lookup(store, scratch));
}

// ---------------------------------------------------------------------------
// Expression evaluation

struct Interp::Impl {
  std::vector<std::unique_ptr<EnvFrame>> arena;
  EnvFrame* global = nullptr;

  EnvFrame* new_frame(EnvFrame* parent) {
    arena.push_back(std::make_unique<EnvFrame>());
    arena.back()->parent = parent;
    return arena.back().get();
  }
};

struct InterpEval {
  Interp& interp;
  Interp::Impl& impl;
  const MonitorOptions& opt;

  std::int64_t expect_int(const Value& v, SourcePos pos, const char* what) {
    if (v.is_int()) return v.as_int();
    if (v.is_void())
      throw EvalError(std::string("uninitialized state variable (void) used in ") + what, pos);
    throw EvalError(std::string("type error: expected an integer in ") + what + ", got " +
                        print_value(v),
                    pos);
  }

  bool expect_bool(const Value& v, SourcePos pos, const char* what) {
    if (v.is_bool()) return v.as_bool();
    if (v.is_void())
      throw EvalError(std::string("uninitialized state variable (void) used as ") + what, pos);
    throw EvalError(std::string("type error: expected a boolean ") + what + ", got " +
                        print_value(v),
                    pos);
  }

  const Value::Vec& expect_vec(const Value& v, SourcePos pos) {
    if (v.is_vec()) return v.as_vec();
    if (v.is_void())
      throw EvalError("uninitialized state variable (void) used as a vector", pos);
    throw EvalError("type error: expected a vector, got " + print_value(v), pos);
  }

  NameLookup scope_of(EnvFrame* env) {
    return [env](const std::string& name) -> const Value* {
      Binding* b = env->lookup(name);
      if (!b) return nullptr;
      return std::get_if<Value>(&b->slot);
    };
  }

  // Evaluates definitions into `frame` (letrec*-style: functions first, then
  // variable initializers in order).
  void eval_defs(const std::vector<DefPtr>& defs, EnvFrame* frame) {
    for (const auto& d : defs) {
      if (const auto* fd = std::get_if<Definition::FunDef>(&d->node))
        frame->names[fd->name] = Binding{Closure{fd, frame}};
    }
    for (const auto& d : defs) {
      if (const auto* vd = std::get_if<Definition::VarDef>(&d->node))
        frame->names[vd->name] = Binding{eval(vd->init, frame)};
    }
  }

  Value apply(const Closure& cl, const std::vector<Value>& args, SourcePos pos) {
    if (args.size() != cl.fn->params.size())
      throw EvalError("arity mismatch: " + cl.fn->name + " expects " +
                          std::to_string(cl.fn->params.size()) + " argument(s), got " +
                          std::to_string(args.size()),
                      pos);
    EnvFrame* frame = impl.new_frame(cl.env);
    for (size_t i = 0; i < args.size(); ++i)
      frame->names[cl.fn->params[i]] = Binding{args[i]};
    return eval(cl.fn->body, frame);
  }

  Value builtin(const Expr::App& app, EnvFrame* env, SourcePos pos) {
    const std::string& op = app.op;
    auto ints = [&](size_t min_n) {
      if (app.args.size() < min_n)
        throw EvalError("arity mismatch: " + op + " needs at least " + std::to_string(min_n) +
                            " argument(s)",
                        pos);
      std::vector<std::int64_t> xs;
      xs.reserve(app.args.size());
      for (const auto& a : app.args)
        xs.push_back(expect_int(eval(a, env), pos, "arithmetic/comparison"));
      return xs;
    };
    if (op == "+") {
      auto xs = ints(2);
      std::int64_t acc = 0;
      for (auto x : xs) acc = checked_add(acc, x, pos);
      return Value(acc);
    }
    if (op == "-") {
      auto xs = ints(1);
      if (xs.size() == 1) return Value(checked_sub(0, xs[0], pos));
      std::int64_t acc = xs[0];
      for (size_t i = 1; i < xs.size(); ++i) acc = checked_sub(acc, xs[i], pos);
      return Value(acc);
    }
    if (op == "*") {
      auto xs = ints(2);
      std::int64_t acc = 1;
      for (auto x : xs) acc = checked_mul(acc, x, pos);
      return Value(acc);
    }
    if (op == "sub1" || op == "add1") {
      if (app.args.size() != 1)
        throw EvalError("arity mismatch: " + op + " takes one argument", pos);
      std::int64_t x = expect_int(eval(app.args[0], env), pos, "arithmetic");
      return Value(op == "sub1" ? checked_sub(x, 1, pos) : checked_add(x, 1, pos));
    }
    if (op == "=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
      if (app.args.size() != 2)
        throw EvalError("arity mismatch: " + op + " takes two arguments", pos);
      std::int64_t a = expect_int(eval(app.args[0], env), pos, "comparison");
      std::int64_t b = expect_int(eval(app.args[1], env), pos, "comparison");
      bool r = op == "=" ? a == b
               : op == "<" ? a < b
               : op == "<=" ? a <= b
               : op == ">" ? a > b
                           : a >= b;
      return Value(r);
    }
    throw EvalError("unbound name '" + op + "'", pos);
  }

  void snapshot_names(const std::set<std::string>& names, EnvFrame* env,
                      std::map<std::string, std::string>& out) {
    for (const auto& n : names) {
      Binding* b = env->lookup(n);
      if (!b) continue;
      if (const Value* v = std::get_if<Value>(&b->slot)) out[n] = print_value(*v);
    }
  }

  void emit(EventKind kind, SourcePos pos, std::int64_t iter, std::string formula,
            const std::set<std::string>& names, EnvFrame* env) {
    MonitorEvent ev;
    ev.kind = kind;
    ev.loop_pos = pos;
    ev.iteration = iter;
    ev.formula = std::move(formula);
    snapshot_names(names, env, ev.env_snapshot);
    interp.events_.push_back(std::move(ev));
    if (opt.strict && kind != EventKind::IterationCap)
      throw EvalError("monitor violation (" + event_kind_name(kind) + ") at iteration " +
                          std::to_string(iter),
                      pos);
  }

  Value eval_while(const Expr::While& w, SourcePos pos, EnvFrame* env) {
    std::set<std::string> watched = free_vars(w.invariant);
    if (w.variant) {
      auto vv = free_vars(w.variant);
      watched.insert(vv.begin(), vv.end());
    }
    collect_names(w.driver, watched);

    NameLookup scope = scope_of(env);
    std::optional<std::int64_t> prev_variant;
    std::int64_t iter = 0;
    while (true) {
      if (opt.monitor) {
        if (!eval_formula(w.invariant, scope))
          emit(EventKind::InvariantViolation, pos, iter, print_formula(w.invariant), watched,
               env);
        if (w.variant) {
          std::int64_t v = eval_term_concrete(w.variant, scope);
          if (v < 0)
            emit(EventKind::VariantNonpositive, pos, iter, print_term(w.variant), watched, env);
          if (prev_variant && v >= *prev_variant)
            emit(EventKind::VariantNondecreasing, pos, iter, print_term(w.variant), watched,
                 env);
          prev_variant = v;
        }
        if (opt.trace_heads) {
          HeadSnapshot snap;
          snap.loop_pos = pos;
          snap.iteration = iter;
          snapshot_names(watched, env, snap.values);
          interp.head_trace_.push_back(std::move(snap));
        }
      }
      if (!expect_bool(eval(w.driver, env), w.driver->pos, "loop driver")) break;
      if (iter >= opt.iteration_cap) {
        std::set<std::string> names = watched;
        emit(EventKind::IterationCap, pos, iter, "", names, env);
        throw EvalError("iteration cap (" + std::to_string(opt.iteration_cap) + ") exceeded",
                        pos);
      }
      for (const auto& s : w.body) eval(s, env);
      ++iter;
    }
    return Value();
  }

  Value eval(const ExprPtr& e, EnvFrame* env) {
    using namespace std;
    return visit(
        [&](const auto& x) -> Value {
          using T = decay_t<decltype(x)>;
          if constexpr (is_same_v<T, Expr::IntLit>) {
            return Value(x.value);
          } else if constexpr (is_same_v<T, Expr::BoolLit>) {
            return Value(x.value);
          } else if constexpr (is_same_v<T, Expr::StrLit>) {
            return Value(x.value);
          } else if constexpr (is_same_v<T, Expr::VoidLit>) {
            return Value();
          } else if constexpr (is_same_v<T, Expr::Var>) {
            Binding* b = env->lookup(x.name);
            if (!b) throw EvalError("unbound name '" + x.name + "'", e->pos);
            if (holds_alternative<Closure>(b->slot))
              throw EvalError("function '" + x.name + "' used as a value", e->pos);
            return get<Value>(b->slot);
          } else if constexpr (is_same_v<T, Expr::App>) {
            // and/or/not short-circuit and are not shadowable.
            if (x.op == "and" || x.op == "or") {
              bool is_and = x.op == "and";
              for (const auto& a : x.args) {
                bool v = expect_bool(eval(a, env), a->pos, "and/or operand");
                if (v != is_and) return Value(!is_and);
              }
              return Value(is_and);
            }
            if (x.op == "not") {
              if (x.args.size() != 1)
                throw EvalError("arity mismatch: not takes one argument", e->pos);
              return Value(!expect_bool(eval(x.args[0], env), e->pos, "not operand"));
            }
            Binding* b = env->lookup(x.op);
            if (b) {
              if (const Closure* cl = get_if<Closure>(&b->slot)) {
                std::vector<Value> args;
                args.reserve(x.args.size());
                for (const auto& a : x.args) args.push_back(eval(a, env));
                return apply(*cl, args, e->pos);
              }
              throw EvalError("'" + x.op + "' is not a function", e->pos);
            }
            return builtin(x, env, e->pos);
          } else if constexpr (is_same_v<T, Expr::If>) {
            return expect_bool(eval(x.test, env), x.test->pos, "if test")
                       ? eval(x.then_e, env)
                       : eval(x.else_e, env);
          } else if constexpr (is_same_v<T, Expr::Cond>) {
            for (const auto& c : x.clauses)
              if (expect_bool(eval(c.test, env), c.test->pos, "cond test"))
                return eval(c.body, env);
            if (x.else_body) return eval(x.else_body, env);
            throw EvalError("all cond tests were false and there is no else clause", e->pos);
          } else if constexpr (is_same_v<T, Expr::Local>) {
            EnvFrame* frame = impl.new_frame(env);
            eval_defs(x.defs, frame);
            return eval(x.body, frame);
          } else if constexpr (is_same_v<T, Expr::Begin>) {
            Value last;
            for (const auto& s : x.stmts) last = eval(s, env);
            return last;
          } else if constexpr (is_same_v<T, Expr::SetBang>) {
            Binding* b = env->lookup(x.target);
            if (!b) throw EvalError("set! of unbound name '" + x.target + "'", e->pos);
            if (holds_alternative<Closure>(b->slot))
              throw EvalError("set! target '" + x.target + "' is a function", e->pos);
            b->slot = eval(x.rhs, env);
            return Value();
          } else if constexpr (is_same_v<T, Expr::While>) {
            return eval_while(x, e->pos, env);
          } else if constexpr (is_same_v<T, Expr::VectorLit>) {
            std::vector<Value> elems;
            elems.reserve(x.elems.size());
            for (const auto& s : x.elems) elems.push_back(eval(s, env));
            return make_vector(std::move(elems));
          } else if constexpr (is_same_v<T, Expr::VectorRef>) {
            const auto& vec = expect_vec(eval(x.vec, env), x.vec->pos);
            std::int64_t i = expect_int(eval(x.idx, env), x.idx->pos, "vector index");
            if (i < 0 || static_cast<size_t>(i) >= vec.cells->size())
              throw EvalError("vector index out of range: " + std::to_string(i), e->pos);
            return (*vec.cells)[static_cast<size_t>(i)];
          } else if constexpr (is_same_v<T, Expr::VectorSetBang>) {
            const auto& vec = expect_vec(eval(x.vec, env), x.vec->pos);
            std::int64_t i = expect_int(eval(x.idx, env), x.idx->pos, "vector index");
            if (i < 0 || static_cast<size_t>(i) >= vec.cells->size())
              throw EvalError("vector index out of range: " + std::to_string(i), e->pos);
            (*vec.cells)[static_cast<size_t>(i)] = eval(x.rhs, env);
            return Value();
          } else if constexpr (is_same_v<T, Expr::VectorLength>) {
            const auto& vec = expect_vec(eval(x.vec, env), x.vec->pos);
            return Value(static_cast<std::int64_t>(vec.cells->size()));
          } else {  // Assert
            if (!eval_formula(x.formula, scope_of(env))) {
              std::set<std::string> names = free_vars(x.formula);
              emit(EventKind::AssertFailure, e->pos, 0, print_formula(x.formula), names, env);
            }
            return Value();
          }
        },
        e->node);
  }
};

Interp::Interp(const Program& program, MonitorOptions options)
    : impl_(std::make_shared<Impl>()), program_(program), options_(options) {}

void Interp::load() {
  if (loaded_) return;
  loaded_ = true;
  impl_->global = impl_->new_frame(nullptr);
  InterpEval ev{*this, *impl_, options_};
  ev.eval_defs(program_.defs, impl_->global);
}

Value Interp::eval(const ExprPtr& e) {
  load();
  InterpEval ev{*this, *impl_, options_};
  return ev.eval(e, impl_->global);
}

void Interp::define_var(const std::string& name, Value v) {
  load();
  impl_->global->names[name] = Binding{std::move(v)};
}

RunResult Interp::run() {
  RunResult res;
  try {
    load();
  } catch (const EvalError& e) {
    TestResult t;
    t.actual = std::string("error: ") + e.what();
    t.expected = "(program loads)";
    t.passed = false;
    t.pos = e.pos;
    res.tests.push_back(std::move(t));
    res.events = events_;
    return res;
  }
  InterpEval ev{*this, *impl_, options_};
  for (const auto& d : program_.defs) {
    const auto* ce = std::get_if<Definition::CheckExpect>(&d->node);
    if (!ce) continue;
    TestResult t;
    t.pos = d->pos;
    Value actual, expected;
    bool ok = true;
    try {
      actual = ev.eval(ce->actual, impl_->global);
      t.actual = print_value(actual);
    } catch (const EvalError& e) {
      t.actual = std::string("error: ") + e.what();
      ok = false;
    }
    try {
      expected = ev.eval(ce->expected, impl_->global);
      t.expected = print_value(expected);
    } catch (const EvalError& e) {
      t.expected = std::string("error: ") + e.what();
      ok = false;
    }
    t.passed = ok && structural_equal(actual, expected);
    res.tests.push_back(std::move(t));
  }
  res.events = events_;
  return res;
}

RunResult run_program(const Program& p, MonitorOptions options) {
  Interp interp(p, options);
  return interp.run();
}

}  // namespace loopsmith
