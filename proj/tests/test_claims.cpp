#include <doctest.h>

#include <sstream>

#include "dpm/claims.hpp"
#include "dpm/lattice.hpp"
#include "dpm/expr.hpp"

using namespace dpm;

namespace {
  std::string const kSmall =
      "# comment\n"
      "A | monoid-size | M_lambda(bta+b+) | 19 | DERIVED | K\n"
      "B | j-trivial | E1 | false | DERIVED | E\n"
      "C | satisfies | S1 ; xtx=xtx^2 | true | PAPER | S\n"
      "D | violates | S1 ; xtysxy=xtysyx | violated lhs=0 rhs=bcb | PAPER | S\n"
      "E | derivable | xtxs=xtxsx => xtx=xtx^2 | true | PAPER | D\n"
      "F | isoterm | M(x) ; x | true | TRIVIAL | I\n";
}  // namespace

TEST_CASE("corpus parsing") {
  auto cs = parse_corpus(kSmall);
  REQUIRE(cs.size() == 6);
  CHECK(cs[0].id == "A");
  CHECK(cs[0].line == 2);
  CHECK(cs[2].inputs == "S1 ; xtx=xtx^2");
  CHECK_THROWS_AS(parse_corpus("A | monoid-size | M() | 1 | PAPER\n"), CorpusError);
  CHECK_THROWS_AS(parse_corpus("A | size | M() | 1 | PAPER | x\n"), CorpusError);
  CHECK_THROWS_AS(parse_corpus("A | monoid-size | M() | 1 | GUESS | x\n"), CorpusError);
  CHECK_THROWS_AS(parse_corpus("A | monoid-size | M() | 1 | PAPER | x\nA | monoid-size | M() | 1 | PAPER | x\n"),
                  CorpusError);
  CHECK(parse_corpus("A | monoid-size | M() | 1 | PAPER slow | x\n")[0].slow());
}

TEST_CASE("the shipped corpus parses") {
  auto cs = read_corpus(default_corpus_path());
  CHECK(cs.size() > 100);
  for (auto const& c : cs) {
    CHECK(std::find(claim_kinds().begin(), claim_kinds().end(), c.kind) != claim_kinds().end());
  }
}

TEST_CASE("verification of a small corpus") {
  auto r = verify_corpus(kSmall, {});
  CHECK(r.results.size() == 6);
  CHECK(r.all_passed());
  CHECK(r.hash == corpus_hash(kSmall));
  CHECK(corpus_hash(kSmall).size() == 16);
  CHECK(corpus_hash(kSmall) != corpus_hash(kSmall + "\n"));
}

TEST_CASE("a wrong expectation fails without stopping the run") {
  auto text = std::string("A | monoid-size | M_lambda(bta+b+) | 20 | PAPER | K\n") +
              "B | monoid-size | M(x) | 3 | TRIVIAL | M\n" + "C | monoid-size | M(bad | 3 | TRIVIAL | M\n";
  auto r = verify_corpus(text, {});
  REQUIRE(r.results.size() == 3);
  CHECK(r.results[0].verdict == Verdict::fail);
  CHECK(r.results[0].actual == "19");
  CHECK(r.results[1].verdict == Verdict::pass);
  CHECK(r.results[2].verdict != Verdict::pass);
  CHECK_FALSE(r.all_passed());
  CHECK(r.count(Verdict::fail) == 2);
}

TEST_CASE("filters, slow claims and report determinism") {
  auto filtered = verify_corpus(kSmall, {.filter = "D"});
  CHECK(filtered.results.size() == 1);
  auto slow = verify_corpus("S | monoid-size | M(x) | 3 | TRIVIAL slow | M\n", {});
  CHECK(slow.results[0].verdict == Verdict::skipped);
  CHECK(slow.all_passed());
  CHECK(verify_corpus("S | monoid-size | M(x) | 3 | TRIVIAL slow | M\n", {.slow = true}).results[0].verdict
        == Verdict::pass);

  std::ostringstream one, four;
  write_report(one, verify_corpus(kSmall, {.jobs = 1}), false);
  write_report(four, verify_corpus(kSmall, {.jobs = 4}), false);
  CHECK(one.str() == four.str());
  CHECK(one.str().starts_with("# corpus "));
}

TEST_CASE("lattice edges are all separated") {
  auto l = build_lattice();
  CHECK(l.nodes.size() == 13);
  CHECK(l.edges.size() == 15);
  for (auto const& e : l.edges) {
    INFO(l.nodes[e.lower].name, " < ", l.nodes[e.upper].name);
    REQUIRE(e.separator);
    CHECK(satisfies(*eval_monoid(l.nodes[e.lower].expr), *e.separator).holds);
    CHECK_FALSE(satisfies(*eval_monoid(l.nodes[e.upper].expr), *e.separator).holds);
  }
  auto dot = to_dot(l);
  CHECK(dot.starts_with("digraph"));
}
