#include <doctest.h>

#include "trustlogic/harness.hpp"
#include "trustlogic/syntax.hpp"

using namespace trustlogic;

TEST_CASE("dataset canonical form") {
  Dataset d({"y", "x", "y"});
  CHECK(d.names() == std::vector<VarName>{"x", "y"});
  CHECK(Dataset({"x", "y"}) == Dataset({"y", "x"}));
  CHECK(Dataset{}.subset_of(d));
  CHECK(d.union_with(Dataset({"z"})).names() ==
        std::vector<VarName>{"x", "y", "z"});
  CHECK(d.to_text() == "x,y");
  CHECK(Dataset{}.to_text() == "");
}

TEST_CASE("parse announcement and belief") {
  FormulaPtr f = parse_formula("[t] B{t}{} decline");
  REQUIRE(f->kind() == FormulaKind::Announce);
  CHECK(f->data() == Dataset({"t"}));
  const Formula& b = *f->body();
  REQUIRE(b.kind() == FormulaKind::Belief);
  CHECK(b.trust() == Dataset({"t"}));
  CHECK(b.data() == Dataset{});
  REQUIRE(b.body()->kind() == FormulaKind::Atom);
  CHECK(b.body()->atom_name() == "decline");
}

TEST_CASE("implication is right-associative and lowest") {
  FormulaPtr f = parse_formula("p -> q -> r");
  REQUIRE(f->kind() == FormulaKind::Implies);
  CHECK(f->lhs()->atom_name() == "p");
  REQUIRE(f->rhs()->kind() == FormulaKind::Implies);
  CHECK(f->rhs()->lhs()->atom_name() == "q");
  CHECK(f->rhs()->rhs()->atom_name() == "r");

  FormulaPtr g = parse_formula("!p -> q");
  REQUIRE(g->kind() == FormulaKind::Implies);
  CHECK(g->lhs()->kind() == FormulaKind::Not);
}

TEST_CASE("sugar is eliminated at parse time") {
  CHECK(*parse_formula("K{x,y} p") ==
        *Formula::belief({}, Dataset({"x", "y"}), Formula::atom("p")));
  CHECK(*parse_formula("a <-> b") ==
        *parse_formula("!((a -> b) -> !(b -> a))"));
  CHECK(*parse_formula("false") ==
        *Formula::negation(Formula::implies(Formula::atom("__f"),
                                            Formula::atom("__f"))));
  // B and K without braces are ordinary atoms.
  CHECK(parse_formula("B")->kind() == FormulaKind::Atom);
  CHECK(parse_formula("K -> B")->kind() == FormulaKind::Implies);
}

TEST_CASE("datasets parse canonically") {
  CHECK(*parse_formula("B{y,x}{} p") == *parse_formula("B{x,y}{} p"));
  CHECK(*parse_formula("B{x,x}{} p") == *parse_formula("B{x}{} p"));
  CHECK(parse_formula("[] p")->data() == Dataset{});
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula("p -> "), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("B{}{x"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p -> \xc3\xa9"), ParseError);
  try {
    parse_formula("p -> __f");
    FAIL("reserved atom accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
    CHECK(std::string(e.what()).find("reserved") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_formula("_x"), ParseError);
}

TEST_CASE("printer emits canonical text") {
  CHECK(print_formula(*Formula::belief({}, Dataset({"x"}), Formula::atom("p"))) ==
        "B{}{x} p");
  CHECK(print_formula(*Formula::announce({}, Formula::atom("p"))) == "[] p");
  CHECK(print_formula(*Formula::implies(Formula::atom("p"), Formula::atom("p"))) ==
        "p -> p");
  CHECK(print_formula(*parse_formula("(p -> q) -> r")) == "(p -> q) -> r");
  CHECK(print_formula(*parse_formula("!(p -> q)")) == "!(p -> q)");
  CHECK(print_formula(*parse_formula("B{t}{x} false")) == "B{t}{x} false");
  CHECK(print_formula(*parse_formula("[x] !B{}{x} p")) == "[x] !B{}{x} p");
}

TEST_CASE("node counts") {
  CHECK(node_count(*parse_formula("p")) == 1);
  CHECK(node_count(*parse_formula("[x][y] p")) == 3);
  CHECK(node_count(*parse_formula("p -> p")) == 3);
  CHECK(node_count(*parse_formula("B{t}{x} !q")) == 3);
}

TEST_CASE("free variables") {
  CHECK(free_variables(*parse_formula("B{t}{x} [y] p")) ==
        Dataset({"t", "x", "y"}));
  CHECK(free_variables(*parse_formula("p -> q")) == Dataset{});
}

TEST_CASE("round trip on random formulas") {
  GenParams params;
  Dataset vars({"x1", "x2", "x3", "x4"});
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = gen_formula(params, vars, trial_seed(7, 1, i));
    FormulaPtr back = parse_formula(print_formula(*f));
    CHECK(*f == *back);
  }
}
