#include <doctest.h>

#include <random>

#include "dpm/expr.hpp"
#include "dpm/identity.hpp"
#include "oracle.hpp"

using namespace dpm;

namespace {
  // Random monoid: submonoid of the full transformation monoid on n points
  // generated by a few random maps.
  FiniteMonoid random_monoid(std::mt19937& rng, std::size_t points, std::size_t gens) {
    using Map = std::vector<std::uint8_t>;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(points) - 1);
    Map id(points);
    for (std::size_t i = 0; i < points; ++i) {
      id[i] = static_cast<std::uint8_t>(i);
    }
    std::vector<Map> elems{id};
    std::vector<Map> gs;
    for (std::size_t g = 0; g < gens; ++g) {
      Map m(points);
      for (auto& x : m) {
        x = static_cast<std::uint8_t>(pick(rng));
      }
      gs.push_back(m);
    }
    auto compose = [&](Map const& a, Map const& b) {  // a then b
      Map r(points);
      for (std::size_t i = 0; i < points; ++i) {
        r[i] = b[a[i]];
      }
      return r;
    };
    std::map<Map, Elem> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (auto const& g : gs) {
        auto r = compose(elems[i], g);
        if (index.try_emplace(r, static_cast<Elem>(elems.size())).second) {
          elems.push_back(r);
        }
      }
    }
    std::size_t              n = elems.size();
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = a == 0 ? "1" : "m" + std::to_string(a);
      for (std::size_t b = 0; b < n; ++b) {
        table[a * n + b] = index.at(compose(elems[a], elems[b]));
      }
    }
    return FiniteMonoid(n, 0, std::nullopt, table, labels);
  }

  std::vector<Elem> values(Identity const& id, Substitution const& s) {
    std::vector<Elem> out;
    for (auto x : letters(id)) {
      out.push_back(*s[x]);
    }
    return out;
  }
}  // namespace

TEST_CASE("parsing identities") {
  auto id = parse_identity("xtx = xtx^2");
  CHECK(to_string(id) == "xtx = xtxx");
  CHECK(parse_identity("xy≈yx") == parse_identity("xy=yx"));
  CHECK(parse_identity_chain("xtx=xtx^2=x^2tx").size() == 2);
  CHECK(parse_identity_lines("# c\nxy=yx\n\nx=x^2 # idem\n").size() == 2);
  CHECK_THROWS(parse_identity("x+=x"));
  CHECK_THROWS(parse_identity("xy"));
  CHECK(letters(parse_identity("tx=xs")).size() == 3);
}

TEST_CASE("satisfaction agrees with naive enumeration") {
  std::mt19937 rng(2024);
  std::vector<Identity> ids;
  for (auto t : {"xy=yx", "x^2=x^3", "xtx=xtx^2", "xyx=yxy", "xtysxy=xtysyx", "x^2y=yx^2", "xy^2x=x^2y^2"}) {
    ids.push_back(parse_identity(t));
  }
  for (int round = 0; round < 30; ++round) {
    auto m = random_monoid(rng, 3, 1 + round % 3);
    for (auto const& id : ids) {
      auto naive = oracle::violations(m, id);
      auto r     = satisfies(m, id);
      CHECK(r.holds == naive.empty());
      if (!naive.empty()) {
        REQUIRE(r.witness);
        CHECK(values(id, *r.witness) == naive.front());
        CHECK(evaluate(m, id.lhs, *r.witness) == r.lhs_value);
        CHECK(evaluate(m, id.rhs, *r.witness) == r.rhs_value);
      }
      auto par = satisfies(m, id, {.threads = 4});
      CHECK(par.holds == r.holds);
      CHECK(par.witness.has_value() == r.witness.has_value());
      if (r.witness) {
        CHECK(values(id, *par.witness) == values(id, *r.witness));
      }
    }
  }
}

TEST_CASE("witness in S1") {
  auto s1 = *eval_monoid("S1");
  auto id = parse_identity("xtysxy=xtysyx");
  auto r  = satisfies(s1, id);
  REQUIRE_FALSE(r.holds);
  CHECK(s1.label(r.lhs_value) == "0");
  CHECK(s1.label(r.rhs_value) == "bcb");
  CHECK(values(id, *r.witness) == oracle::violations(s1, id).front());
}

TEST_CASE("long identities") {
  CHECK(long_identity(1) == parse_identity("x y1 y1 x = x y1 x y1"));
  CHECK(long_identity(2) == parse_identity("x y1 y1 y2 y2 x = x y1 y1 y2 x y2"));
  CHECK_THROWS(long_identity(0));
  auto k = *eval_monoid("M_lambda(bta+b+)");
  for (unsigned n : {1u, 2u}) {
    auto id = long_identity(n);
    CHECK(satisfies(k, id, {.threads = 4}).holds);
    CHECK(oracle::violations(k, id).empty());
  }
}

TEST_CASE("budget and cost") {
  auto k = *eval_monoid("M_lambda(bta+b+)");
  auto id = parse_identity("xtysxy=xtysyx");
  CHECK(satisfaction_cost(k, id) == 19ULL * 19 * 19 * 19);
  CHECK_THROWS_AS(satisfies(k, id, {.budget = 1000}), BudgetExceeded);
  CHECK(satisfies_all(k, {id, parse_identity("xtx=xtx^2")}).size() == 2);
}

TEST_CASE("substitutions with given values") {
  auto s1 = *eval_monoid("S1");
  auto id = parse_identity("xtysxy=xtysyx");
  auto s  = find_substitution_with_values(s1, id, *s1.find_label("0"), *s1.find_label("bcb"));
  REQUIRE(s);
  CHECK(evaluate(s1, id.rhs, *s) == *s1.find_label("bcb"));
  CHECK_FALSE(find_substitution_with_values(s1, id, *s1.find_label("a"), *s1.find_label("b")));
}
