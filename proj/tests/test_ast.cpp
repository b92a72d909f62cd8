#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopsmith/ast.hpp"
#include "loopsmith/printer.hpp"
#include "support.hpp"

using namespace loopsmith;
using loopsmith::test::formula;
using loopsmith::test::term;

namespace {

// Independent structural-recursion oracle for free variables: walks the raw
// term tree and collects names, with an explicit binder stack.
void fv_oracle_term(const TermPtr& t, std::vector<std::string>& binders,
                    std::set<std::string>& out) {
  using namespace std;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        auto bound = [&](const std::string& n) {
          return std::find(binders.begin(), binders.end(), n) != binders.end();
        };
        if constexpr (is_same_v<T, Term::TVar>) {
          if (!bound(x.name)) out.insert(x.name);
        } else if constexpr (is_same_v<T, Term::Add>) {
          for (auto& s : x.terms) fv_oracle_term(s, binders, out);
        } else if constexpr (is_same_v<T, Term::Mul>) {
          for (auto& s : x.factors) fv_oracle_term(s, binders, out);
        } else if constexpr (is_same_v<T, Term::Sub>) {
          fv_oracle_term(x.a, binders, out);
          fv_oracle_term(x.b, binders, out);
        } else if constexpr (is_same_v<T, Term::Sub1> || is_same_v<T, Term::Add1>) {
          fv_oracle_term(x.t, binders, out);
        } else if constexpr (is_same_v<T, Term::BigProd> || is_same_v<T, Term::BigSum>) {
          fv_oracle_term(x.lo, binders, out);
          fv_oracle_term(x.hi, binders, out);
          binders.push_back(x.index);
          fv_oracle_term(x.body, binders, out);
          binders.pop_back();
        } else if constexpr (is_same_v<T, Term::VRef>) {
          if (!bound(x.vec)) out.insert(x.vec);
          fv_oracle_term(x.idx, binders, out);
        } else if constexpr (is_same_v<T, Term::VLen>) {
          if (!bound(x.vec)) out.insert(x.vec);
        }
      },
      t->node);
}

void fv_oracle(const FormulaPtr& f, std::set<std::string>& out) {
  using namespace std;
  std::vector<std::string> binders;
  visit(
      [&](const auto& x) {
        using T = decay_t<decltype(x)>;
        if constexpr (is_same_v<T, Formula::Cmp>) {
          fv_oracle_term(x.lhs, binders, out);
          fv_oracle_term(x.rhs, binders, out);
        } else if constexpr (is_same_v<T, Formula::And> || is_same_v<T, Formula::Or>) {
          for (auto& g : x.fs) fv_oracle(g, out);
        } else if constexpr (is_same_v<T, Formula::Not>) {
          fv_oracle(x.f, out);
        } else if constexpr (is_same_v<T, Formula::Implies>) {
          fv_oracle(x.a, out);
          fv_oracle(x.b, out);
        } else if constexpr (is_same_v<T, Formula::SortedRange>) {
          out.insert(x.vec);
          fv_oracle_term(x.lo, binders, out);
          fv_oracle_term(x.hi, binders, out);
        }
      },
      f->node);
}

}  // namespace

TEST_CASE("free_vars: accumulator invariant") {
  auto f = formula("(= accum (prod (i (+ k 1) n) i))");
  CHECK(free_vars(f) == std::set<std::string>{"accum", "k", "n"});
}

TEST_CASE("free_vars: closed comparison") {
  CHECK(free_vars(formula("(< 7 9)")).empty());
}

TEST_CASE("free_vars: sorted range (oracle-derived)") {
  auto f = formula("(sorted V (+ h 1) high)");
  std::set<std::string> expect;
  fv_oracle(f, expect);
  CHECK(expect == std::set<std::string>{"V", "h", "high"});
  CHECK(free_vars(f) == expect);
}

TEST_CASE("free_vars agrees with oracle on assorted formulas") {
  const char* samples[] = {
      "(and (>= k 0) (= accum (prod (i (+ k 1) n) i)))",
      "(implies (< lo j) (<= (vref V (- j 1)) (vref V (+ j 1))))",
      "(= (sum (i a b) (* i i)) (vlen W))",
      "(or (not (= x y)) (sorted V (prod (q 1 m) q) hi))",
  };
  for (const char* s : samples) {
    auto f = formula(s);
    std::set<std::string> expect;
    fv_oracle(f, expect);
    CHECK_MESSAGE(free_vars(f) == expect, s);
  }
}

TEST_CASE("substitute: invariant rewrite k := k+1") {
  auto f = formula("(= accum (prod (i (+ k 1) n) i))");
  auto res = substitute(f, "k", term("(+ k 1)"));
  // Syntactically the bound becomes (+ (+ k 1) 1); structural target:
  auto target = formula("(= accum (prod (i (+ (+ k 1) 1) n) i))");
  CHECK(equal(res, target));
}

TEST_CASE("substitute: identity when var not free") {
  auto f = formula("(>= k 0)");
  CHECK(equal(substitute(f, "n", term("5")), f));
}

TEST_CASE("substitute: bound index occurrences untouched") {
  auto t = term("(prod (i a b) i)");
  CHECK(equal(substitute(t, "i", term("7")), t));
}

TEST_CASE("substitute: big-op bounds still substituted when var bound in body") {
  auto t = term("(prod (i i0 b) i)");
  auto r = substitute(t, "i0", term("3"));
  CHECK(equal(r, term("(prod (i 3 b) i)")));
}

TEST_CASE("substitute: binder renamed to avoid capture") {
  // replacing n by (+ i 1) must not let the binder i capture it
  auto t = term("(prod (i 1 n) i)");
  auto r = substitute(t, "n", term("(+ i 1)"));
  auto fv = free_vars(r);
  CHECK(fv.count("i"));  // the free i from the replacement survives
  // and the body's bound occurrences now use a renamed index
  const auto& bp = std::get<Term::BigProd>(r->node);
  CHECK(bp.index != "i");
  CHECK(equal(bp.hi, term("(+ i 1)")));
}

TEST_CASE("substitute then free_vars: var gone unless reintroduced") {
  auto f = formula("(and (>= k 0) (= accum (prod (i (+ k 1) n) i)))");
  auto r = substitute(f, "k", term("(- m 2)"));
  auto fv = free_vars(r);
  CHECK(!fv.count("k"));
  CHECK(fv.count("m"));
}

TEST_CASE("structural equality ignores positions") {
  auto a = test::expr("(begin (set! k (sub1 k)) (fact-state))");
  auto b = test::expr("(begin (set! k (sub1 k))\n  (fact-state))");
  CHECK(equal(a, b));
  auto c = test::expr("(begin (set! k (add1 k)) (fact-state))");
  CHECK(!equal(a, c));
}

TEST_CASE("fresh_name appends numeric suffixes") {
  std::set<std::string> used = {"k", "k2"};
  CHECK(fresh_name("j", used) == "j");
  CHECK(fresh_name("k", used) == "k3");
}
