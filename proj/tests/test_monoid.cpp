#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dpm/dp_construct.hpp"
#include "dpm/expr.hpp"
#include "dpm/isomorphism.hpp"
#include "dpm/presentation.hpp"

using namespace dpm;

namespace {
  std::set<std::string> labels(FiniteMonoid const& m) {
    std::set<std::string> out;
    for (auto const& l : m.labels()) {
      out.insert(l == "0" ? l : to_string(parse_word(l)));
    }
    return out;
  }

  // Same monoid with elements renamed by a random permutation.
  FiniteMonoid shuffled(FiniteMonoid const& m, unsigned seed) {
    std::vector<Elem> perm(m.size());
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::mt19937 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Elem>        table(m.size() * m.size());
    std::vector<std::string> names(m.size());
    for (Elem a = 0; a < m.size(); ++a) {
      names[perm[a]] = "e" + std::to_string(a);
      for (Elem b = 0; b < m.size(); ++b) {
        table[perm[a] * m.size() + perm[b]] = perm[m(a, b)];
      }
    }
    return FiniteMonoid(m.size(), perm[m.identity()], std::nullopt, table, names);
  }

  std::string golden(std::string const& name) {
    std::ifstream in(std::string(DPM_DATA_DIR) + "/monoids/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
}  // namespace

TEST_CASE("presented monoids") {
  CHECK(labels(*eval_monoid("A1")) == std::set<std::string>{"1", "a", "b", "c", "ba", "bc", "0"});
  CHECK(labels(*eval_monoid("E1")) == std::set<std::string>{"1", "a", "b", "c", "ac", "0"});
  CHECK(labels(*eval_monoid("A01")) == std::set<std::string>{"1", "e", "f", "ef", "0"});
  CHECK(labels(*eval_monoid("S1"))
        == std::set<std::string>{"1", "a", "b", "c", "ab", "abb", "bb", "bc", "bcb", "cb", "cbb", "0"});
  auto s = semigroup_from_presentation(named_presentation("S"));
  CHECK(s.size == 11);
  CHECK(semigroup_from_presentation(named_presentation("A")).size == 6);
  // closure with the empty word gives the same monoid as adjoining 1
  CHECK(find_isomorphism(from_presentation(named_presentation("A")), *eval_monoid("A1")));
}

TEST_CASE("presentation relations hold in the closure") {
  for (auto const& name : presentation_names()) {
    auto p = named_presentation(name);
    auto m = from_presentation(p);
    auto value = [&](Word const& w) {
      Elem acc = m.identity();
      for (auto l : w) {
        acc = m(acc, *m.find_label(l.base.name()));
      }
      return acc;
    };
    for (auto const& [u, v] : p.relations) {
      CHECK(value(u) == value(v));
    }
    for (auto const& z : p.zero_words) {
      CHECK(value(z) == *m.zero());
    }
  }
  CHECK_THROWS_AS(from_presentation(parse_presentation("<a | >"), 50), MonoidError);
  CHECK_THROWS(parse_presentation("<a | b=a>"));
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteMonoid(2, 1, std::nullopt, {0, 1, 1, 0}, {"x", "1"}), MonoidError);
  CHECK_NOTHROW(FiniteMonoid(2, 0, std::nullopt, {0, 1, 1, 0}, {"1", "g"}));
}

TEST_CASE("adjoin, dual, product, submonoid") {
  auto a1 = *eval_monoid("A1");
  CHECK(adjoin_identity(a1).size() == 8);
  CHECK(dual(dual(a1)) == a1);
  auto k  = *eval_monoid("M_lambda(bta+b+)");
  auto dk = dual(k);
  CHECK(dk.label(dk(*dk.find_label("bta+"), *dk.find_label("a+b+"))) == "0");
  auto p = direct_product(*eval_monoid("A01"), *eval_monoid("M(x)"));
  CHECK(p.size() == 15);
  CHECK(is_j_trivial(p).j_trivial);
  std::vector<Elem> gens{*k.find_label("a+"), *k.find_label("b"), *k.find_label("ta+")};
  auto sub = submonoid(k, gens);
  CHECK(sub.monoid.size() == 12);
  for (Elem a = 0; a < sub.monoid.size(); ++a) {
    for (Elem b = 0; b < sub.monoid.size(); ++b) {
      CHECK(sub.embedding[sub.monoid(a, b)] == k(sub.embedding[a], sub.embedding[b]));
    }
  }
}

TEST_CASE("structural properties") {
  CHECK(is_j_trivial(*eval_monoid("M_lambda(bta+b+)")).j_trivial);
  auto e1 = is_j_trivial(*eval_monoid("E1"));
  CHECK_FALSE(e1.j_trivial);
  CHECK(e1.violating_pair);
  CHECK(is_aperiodic(*eval_monoid("E1")));
  CHECK_FALSE(is_aperiodic(cyclic_group(3)));
  CHECK_FALSE(idempotents_commute(*eval_monoid("A01")));
  CHECK(idempotents_commute(*eval_monoid("M(xy)")));
  CHECK(idempotents(*eval_monoid("A01")).size() == 4);
}

TEST_CASE("isomorphism search") {
  auto s1  = *eval_monoid("S1");
  auto sub = *eval_monoid("sub(M_lambda(bta+b+); a+, b, ta+)");
  auto map = find_isomorphism(sub, s1);
  REQUIRE(map);
  CHECK(is_isomorphism(sub, s1, *map));
  for (unsigned seed = 0; seed < 5; ++seed) {
    for (auto e : {"M_lambda(bta+b+)", "A1", "M(abtasb, atbsab)", "M_gamma(a+b+ta+, a+tb+a+)"}) {
      auto m = *eval_monoid(e);
      auto r = find_isomorphism(m, shuffled(m, seed));
      REQUIRE(r);
      CHECK(is_isomorphism(m, shuffled(m, seed), *r));
    }
  }
  CHECK_FALSE(find_isomorphism(*eval_monoid("A1"), *eval_monoid("Abar1")));
  CHECK_FALSE(find_isomorphism(*eval_monoid("M_lambda(bta+b+)"), dual(*eval_monoid("M_lambda(bta+b+)"))));
  CHECK(find_isomorphism(*eval_monoid("M_tau1(a+b+)"), *eval_monoid("A01")));
  CHECK(find_isomorphism(*eval_monoid("M_gamma(a+t)"), *eval_monoid("M_rho(a+t)")));
}

TEST_CASE("monoid text format") {
  auto k = *eval_monoid("M_lambda(bta+b+)");
  CHECK(from_text(to_text(k)) == k);
  CHECK_THROWS(from_text("MONOID 2 identity=0 zero=none\n1 x\n0 1\n1 2\n"));
}

TEST_CASE("golden monoid files") {
  for (auto [file, expr] : {std::pair{"K.monoid", "M_lambda(bta+b+)"}, {"S1.monoid", "S1"}, {"A1.monoid", "A1"},
                            {"E1.monoid", "E1"}, {"A01.monoid", "A01"}}) {
    INFO(file);
    CHECK(golden(file) == to_text(*eval_monoid(expr)));
  }
}
