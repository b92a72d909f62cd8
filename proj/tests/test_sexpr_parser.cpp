#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopsmith/parser.hpp"
#include "loopsmith/printer.hpp"
#include "loopsmith/sexpr.hpp"
#include "support.hpp"

using namespace loopsmith;

TEST_CASE("reader: simple list") {
  auto r = read_sexprs("(+ 1 2)");
  REQUIRE(r.forms.size() == 1);
  REQUIRE(r.forms[0]->is_list());
  const auto& items = r.forms[0]->list().items;
  REQUIRE(items.size() == 3);
  CHECK(items[0]->atom().lexeme == "+");
  CHECK(items[1]->atom().lexeme == "1");
  CHECK(items[2]->atom().lexeme == "2");
}

TEST_CASE("reader: comments dropped from forms, kept separately") {
  auto r = read_sexprs("(fact 3) ; comment");
  CHECK(r.forms.size() == 1);
  REQUIRE(r.comments.size() == 1);
  CHECK(r.comments[0].text == "comment");
}

TEST_CASE("reader: unbalanced parens reported at the unclosed opener") {
  try {
    read_sexprs("((");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col == 2);
  }
}

TEST_CASE("reader: unterminated string") {
  CHECK_THROWS_AS(read_sexprs("(\"abc"), ParseError);
}

TEST_CASE("reader: bracket/paren matching") {
  CHECK_NOTHROW(read_sexprs("(cond [(= n 0) 1] [else 2])"));
  CHECK_THROWS_AS(read_sexprs("(cond [(= n 0) 1)"), ParseError);
}

TEST_CASE("reader: positions are 1-based") {
  auto r = read_sexprs("\n  (f)");
  REQUIRE(r.forms.size() == 1);
  CHECK(r.forms[0]->pos.line == 2);
  CHECK(r.forms[0]->pos.col == 3);
}

TEST_CASE("parse_formula: accumulator invariant") {
  auto f = test::formula("(= accum (prod (i (+ k 1) n) i))");
  const auto* cmp = std::get_if<Formula::Cmp>(&f->node);
  REQUIRE(cmp);
  CHECK(cmp->op == CmpOp::Eq);
  const auto* prod = std::get_if<Term::BigProd>(&cmp->rhs->node);
  REQUIRE(prod);
  CHECK(prod->index == "i");
  CHECK(equal(prod->lo, test::term("(+ k 1)")));
}

TEST_CASE("parse_formula: empty conjunction is true") {
  auto f = test::formula("(and)");
  CHECK(std::holds_alternative<Formula::TrueF>(f->node));
}

TEST_CASE("parse_formula: sorted") {
  auto f = test::formula("(sorted V (+ h 1) high)");
  const auto* s = std::get_if<Formula::SortedRange>(&f->node);
  REQUIRE(s);
  CHECK(s->vec == "V");
}

TEST_CASE("parse_formula: unknown operator") {
  CHECK_THROWS_AS(test::formula("(xor a b)"), ParseError);
}

TEST_CASE("parse_term: big-op bounds must not use the index") {
  CHECK_THROWS_AS(test::term("(prod (i i n) i)"), ParseError);
}

TEST_CASE("parse: while without invariant is rejected") {
  auto r = read_sexprs("(while (> k 0) (set! k (sub1 k)))");
  CHECK_THROWS_WITH_AS(parse_expr(r.forms[0]),
                       doctest::Contains("while requires (invariant"), ParseError);
}

TEST_CASE("parse: while with invariant and variant") {
  auto e = test::expr(
      "(while (not (= k 0)) (invariant (>= k 0)) (variant k) (set! k (sub1 k)))");
  const auto* w = std::get_if<Expr::While>(&e->node);
  REQUIRE(w);
  CHECK(w->variant != nullptr);
  CHECK(w->body.size() == 1);
}

TEST_CASE("parse: while with empty body is rejected") {
  auto r = read_sexprs("(while (> k 0) (invariant true))");
  CHECK_THROWS_AS(parse_expr(r.forms[0]), ParseError);
}

TEST_CASE("parse: check-expect") {
  Program p = parse_program_text("(check-expect (fact 3) 6)");
  REQUIRE(p.defs.size() == 1);
  CHECK(std::holds_alternative<Definition::CheckExpect>(p.defs[0]->node));
}

TEST_CASE("parse: duplicate parameters rejected") {
  CHECK_THROWS_AS(parse_program_text("(define (f x x) x)"), ParseError);
}

TEST_CASE("parse: duplicate top-level names rejected") {
  CHECK_THROWS_AS(parse_program_text("(define x 1) (define x 2)"), ParseError);
}

TEST_CASE("parse: floating point rejected") {
  CHECK_THROWS_AS(parse_program_text("(define x 3.14)"), ParseError);
}

TEST_CASE("parse: fact_while corpus") {
  Program p = test::load_corpus("fact_while.rkt");
  // contract + define + two tests
  REQUIRE(p.defs.size() == 4);
  const auto* c = std::get_if<Definition::Contract>(&p.defs[0]->node);
  REQUIRE(c);
  CHECK(c->name == "fact");
  CHECK(c->requires_fs.size() == 1);
  const auto* fd = std::get_if<Definition::FunDef>(&p.defs[1]->node);
  REQUIRE(fd);
  CHECK(fd->name == "fact");
  CHECK(p.defs[1]->meta.signature.has_value());
  CHECK(p.defs[1]->meta.purpose.has_value());
}

TEST_CASE("parse: definition metadata recovered from comments") {
  Program p = parse_program_text(
      "; f: natnum -> natnum\n"
      "; Purpose: To frob the input\n"
      "; Effect: none\n"
      "(define (f x) x)\n");
  const auto* fd = std::get_if<Definition::FunDef>(&p.defs[0]->node);
  REQUIRE(fd);
  CHECK(p.defs[0]->meta.signature == std::string("f: natnum -> natnum"));
  CHECK(p.defs[0]->meta.purpose == std::string("To frob the input"));
  CHECK(p.defs[0]->meta.effect == std::string("none"));
}

TEST_CASE("round-trip: parse(print(p)) structurally equals p on the corpus") {
  const char* files[] = {"fact_structural.rkt", "fact_accum.rkt",
                         "fact_state_right.rkt", "fact_state_left.rkt",
                         "fact_while.rkt", "fact_while_wrong_order.rkt",
                         "fact_while_fixed.rkt", "ins_vector.rkt"};
  for (const char* f : files) {
    Program p = test::load_corpus(f);
    Program q = parse_program_text(print_program(p));
    CHECK_MESSAGE(equal(p, q), f);
  }
}

TEST_CASE("round-trip: printed corpus tokenizes identically (comments are whitespace)") {
  const char* files[] = {"fact_while.rkt", "ins_vector.rkt"};
  for (const char* f : files) {
    std::string src = test::slurp(test::corpus_path(f));
    auto orig = read_sexprs(src);
    Program p = parse_program(orig.forms, orig.comments);
    auto reprinted = read_sexprs(print_program(p));
    REQUIRE(orig.forms.size() == reprinted.forms.size());
    for (size_t i = 0; i < orig.forms.size(); ++i)
      CHECK_MESSAGE(sexpr_to_string(orig.forms[i]) == sexpr_to_string(reprinted.forms[i]), f);
  }
}

TEST_CASE("parse errors carry a position inside the offending form") {
  try {
    parse_program_text("(define (f n)\n  (while (> n 0) (set! n (sub1 n))))");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 2);
    CHECK(e.pos.col >= 3);
  }
}
