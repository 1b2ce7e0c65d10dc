// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <iterator>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "dpm/claims.hpp"
#include "dpm/derive.hpp"
#include "dpm/dp_construct.hpp"
#include "dpm/expr.hpp"
#include "dpm/identity.hpp"
#include "dpm/isomorphism.hpp"
#include "dpm/lattice.hpp"
#include "dpm/presentation.hpp"
#include "dpm/relfree.hpp"

using namespace dpm;

namespace {

  // Runtime limits in seconds.
  constexpr double kLimitEK        = 1.0;
  constexpr double kLimitS         = 1.0;
  constexpr double kLimitStructure = 30.0;
  constexpr double kLimitLong      = 60.0;
  constexpr double kLimitDerive    = 60.0;

  constexpr std::size_t kTauTermBound   = 10;
  constexpr std::size_t kConfluenceLen  = 8;
  constexpr int         kRandomCases    = 100000;

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond) {
        ok = false;
        if (!detail.empty()) {
          detail += "; ";
        }
        detail += what;
      }
    }
  };

  int failures = 0;

  void run(int n, char const* name, double limit, std::function<void(Outcome&)> const& body) {
    Outcome o;
    auto    t0 = std::chrono::steady_clock::now();
    try {
      body(o);
    } catch (std::exception const& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0) {
      o.require(secs < limit, "runtime " + std::to_string(secs) + " s over " + std::to_string(limit) + " s");
    }
    failures += !o.ok;
    std::printf("%s %2d %-28s %8.3fs%s%s\n", o.ok ? "PASS" : "FAIL", n, name, secs, o.detail.empty() ? "" : "  ",
                o.detail.c_str());
    std::fflush(stdout);
  }

  std::set<std::string> label_set(FiniteMonoid const& m) {
    std::set<std::string> out;
    for (auto const& l : m.labels()) {
      out.insert(l == "0" ? l : to_string(parse_word(l)));
    }
    return out;
  }

  std::string join(std::set<std::string> const& s) {
    std::string out;
    for (auto const& x : s) {
      out += (out.empty() ? "" : ",") + x;
    }
    return out;
  }

  bool holds(std::string const& monoid, std::string const& chain) {
    auto m = eval_monoid(monoid);
    for (auto const& id : parse_identity_chain(chain)) {
      if (!satisfies(*m, id).holds) {
        return false;
      }
    }
    return true;
  }

  std::vector<Word> words_up_to(std::string const& alphabet, std::size_t len) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() < len) {
        for (char c : alphabet) {
          out.push_back(out[i] + Letter::plain(Symbol::intern(std::string(1, c))));
        }
      }
    }
    return out;
  }

}  // namespace

int main() {
  run(1, "lower set of bta+b+", kLimitEK, [](Outcome& o) {
    std::set<std::string> const listed{"1",    "a",   "a+",   "b",    "b+",    "t",     "bt",
                                       "ta",   "ta+", "ab",   "ab+",  "a+b",   "a+b+",  "bta",
                                       "bta+", "ta+b", "ta+b+", "bta+b", "bta+b+"};
    std::set<std::string> got;
    for (auto const& u : lower_set(TauWordSet(Tau::lambda, std::vector{parse_word("bta+b+")}))) {
      got.insert(to_string(u));
    }
    std::set<std::string> missing, extra;
    std::ranges::set_difference(listed, got, std::inserter(missing, missing.end()));
    std::ranges::set_difference(got, listed, std::inserter(extra, extra.end()));
    o.require(missing.empty() && extra.empty(),
              "lower set has " + std::to_string(got.size()) + " words, missing {" + join(missing) + "} extra {" +
                  join(extra) + "}");
    auto k = build_monoid(TauWordSet(Tau::lambda, std::vector{parse_word("bta+b+")}));
    o.require(k.size() == 20, "built monoid has " + std::to_string(k.size()) + " elements, expected 20");
  });

  run(2, "S1 inside K", kLimitS, [](Outcome& o) {
    auto sub = eval_monoid("sub(M_lambda(bta+b+); a+, b, ta+)");
    o.require(sub->size() == 12, "submonoid size " + std::to_string(sub->size()));
    auto s1 = from_presentation(
        parse_presentation("<a,b,c | a^2=a, b^2=b^3, abc=ac=ba=b^2c=0, bcb^2=bcb, ca=c>"));
    auto map = find_isomorphism(*sub, s1);
    o.require(map && is_isomorphism(*sub, s1, *map), "no isomorphism with S1");
    std::set<std::string> const listed{"1", "a", "b", "c", "ab", "abb", "bb", "bc", "bcb", "cb", "cbb", "0"};
    o.require(label_set(s1) == listed, "S1 elements {" + join(label_set(s1)) + "}");
  });

  run(3, "presentation element lists", 0, [](Outcome& o) {
    std::map<std::string, std::set<std::string>> const listed{
        {"A1", {"1", "a", "b", "c", "ba", "bc", "0"}},
        {"E1", {"1", "a", "b", "c", "ac", "0"}},
        {"A01", {"1", "e", "f", "ef", "0"}}};
    for (auto const& [name, want] : listed) {
      auto got = label_set(*eval_monoid(name));
      o.require(got == want, name + " = {" + join(got) + "}");
    }
  });

  run(4, "J-trivial and aperiodic", kLimitStructure, [](Outcome& o) {
    std::vector<std::string> exprs;
    for (auto const& n : lattice_nodes()) {
      exprs.push_back(n.expr);
    }
    for (auto e : {"A1", "Abar1", "E1", "A01", "S1", "M_gamma(a+b+ta+, a+tb+a+)", "M_lambda(atba+sb+)",
                   "M_rho(a+tb+asb)", "M(atbasb)", "M(abtasb, atbsab)"}) {
      exprs.emplace_back(e);
    }
    for (auto const& e : exprs) {
      auto m = eval_monoid(e);
      auto j = is_j_trivial(*m);
      if (!j.j_trivial) {
        std::string pair;
        if (j.violating_pair) {
          pair = " (" + m->label(j.violating_pair->first) + " J " + m->label(j.violating_pair->second) + ")";
        }
        o.require(false, e + " not J-trivial" + pair);
      }
      o.require(is_aperiodic(*m), e + " not aperiodic");
    }
  });

  run(5, "satisfaction suite", 0, [](Outcome& o) {
    std::vector<std::pair<std::string, std::string>> const suite{
        {"M_lambda(bta+b+)", "xtx=xtx^2"},
        {"M_lambda(bta+b+)", "xy^2tx=yxytx"},
        {"M_lambda(bta+b+)", "xytxsy=yxtxsy"},
        {"M_lambda(bta+b+)", "xzxtxsx=xzxtsx"},
        {"M_lambda(bta+b+)", "xtyxy=xt(xy)^2"},
        {"E1", "xtx=xtx^2=x^2tx"},
        {"E1", "xy^2x=x^2y^2"},
        {"E1", "xy^2tx=xy^2xtx"},
        {"Abar1", "xtx=xtx^2"},
        {"Abar1", "xy^2tx=xy^2xtx"},
        {"A01", "xtsx=xtxsx"},
        {"A01", "(xy)^2=(yx)^2"},
        {"M_lambda(a+ta+)", "x^2yty=xyxty"}};
    for (auto const& [m, id] : suite) {
      o.require(holds(m, id), m + " violates " + id);
    }
  });

  run(6, "violation suite", 0, [](Outcome& o) {
    auto s1 = eval_monoid("S1");
    auto id = parse_identity("xtysxy=xtysyx");
    auto r  = satisfies(*s1, id);
    o.require(!r.holds && r.witness, "S1 satisfies xtysxy=xtysyx");
    if (r.witness) {
      auto l = s1->label(evaluate(*s1, id.lhs, *r.witness));
      auto v = s1->label(evaluate(*s1, id.rhs, *r.witness));
      o.require(l == "0" && v == "bcb", "S1 witness gives lhs=" + l + " rhs=" + v);
    }
    o.require(!holds("dual(M_lambda(bta+b+))", "xtx=xtx^2"), "dual K satisfies xtx=xtx^2");
    o.require(!holds("M_lambda(a+btb+)", "x^2yty=xyxty"), "N satisfies x^2yty=xyxty");
    o.require(holds("M_lambda(a+ta+)", "x^2yty=xyxty"), "M_lambda(a+ta+) violates x^2yty=xyxty");
  });

  run(7, "long identities", 0, [](Outcome& o) {
    auto k  = eval_monoid("M_lambda(bta+b+)");
    auto t0 = std::chrono::steady_clock::now();
    for (unsigned n = 1; n <= 4; ++n) {
      o.require(satisfies(*k, long_identity(n)).holds, "n=" + std::to_string(n) + " violated");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < kLimitLong, "sequential n=1..4 took " + std::to_string(secs) + " s");
    unsigned threads = std::max(2u, std::thread::hardware_concurrency());
    auto     r       = satisfies(*k, long_identity(5), {.threads = threads});
    o.require(r.holds, "n=5 violated");
    o.require(r.substitutions == satisfaction_cost(*k, long_identity(5)), "n=5 search space not covered");
    std::printf("     n=1..4 sequential %.3fs, n=5 on %u threads\n", secs, threads);
  });

  run(8, "isomorphism suite", 0, [](Outcome& o) {
    auto g = eval_monoid("M_gamma(a+t)");
    auto l = eval_monoid("M_lambda(a+t)");
    auto r = eval_monoid("M_rho(a+t)");
    o.require(find_isomorphism(*g, *l).has_value(), "M_gamma(a+t) vs M_lambda(a+t)");
    o.require(find_isomorphism(*l, *r).has_value(), "M_lambda(a+t) vs M_rho(a+t)");
    o.require(find_isomorphism(*eval_monoid("M_tau1(a+b+)"), *eval_monoid("A01")).has_value(),
              "M_tau1(a+b+) vs A01");
  });

  run(9, "bounded derivations", kLimitDerive, [](Outcome& o) {
    struct Case {
      std::vector<char const*> axioms;
      char const*              goal;
    };
    std::vector<Case> const cases{
        {{"xtyxsy=xtxyxsy"}, "xtx=xtx^2"},
        {{"xtx=xtx^2", "x^2t=x^2tx"}, "xtxs=xtxsx"},
        {{"xtxs=xtxsx"}, "xtx=xtx^2"},
        {{"xtxs=xtxsx"}, "x^2t=x^2tx"},
        {{"xtx=xtx^2", "xy^2tx=xy^2xtx"}, "xtyxsy=xtyxysy"},
        {{"xtx=x^2tx", "xy^2tx=xy^2xtx"}, "xysytx=xyxsytx"}};
    DeriveOptions opts{.max_len = 14, .max_steps = 100000};
    for (auto const& c : cases) {
      std::vector<Identity> ax;
      for (auto a : c.axioms) {
        ax.push_back(parse_identity(a));
      }
      auto t = derive_bounded(ax, parse_identity(c.goal), opts);
      if (!t) {
        o.require(false, std::string("no derivation of ") + c.goal);
        continue;
      }
      auto err = check_trace(ax, *t);
      o.require(err.empty(), std::string("bad trace for ") + c.goal + ": " + err);
    }
  });

  run(10, "tau-term and isoterm suite", 0, [](Outcome& o) {
    for (auto const& c : read_corpus(default_corpus_path())) {
      if (c.kind != "tau-term" && c.kind != "not-tau-term") {
        continue;
      }
      auto parts = split_top_level(c.inputs, ';');
      auto m     = eval_monoid(parts[1]);
      auto u     = canonical(parse_word(parts[2]), parse_tau(parts[0]));
      auto exact = is_tau_term(*m, u);
      auto bound = is_tau_term(*m, u, {.exact = false, .bound = kTauTermBound});
      bool e     = exact.status != TauTermStatus::fails;
      bool b     = bound.status != TauTermStatus::fails;
      o.require(e == b, c.id + ": exact " + std::string(to_string(exact.status)) + ", bounded " +
                            std::string(to_string(bound.status)));
    }
    auto k = eval_monoid("M_lambda(bta+b+)");
    o.require(is_isoterm(*k, parse_word("xy")).isoterm, "xy is not an isoterm for K");
    auto n = is_tau_term(*eval_monoid("M_lambda(a+ta+)"), canonical(parse_word("a+btb+"), Tau::lambda));
    o.require(n.status == TauTermStatus::fails && n.witness, "a+btb+ not refuted for M_lambda(a+ta+)");
    if (n.witness) {
      std::printf("     witness %s = %s\n", to_string(n.witness->first).c_str(),
                  to_string(n.witness->second).c_str());
    }
    auto self = canonical(parse_word("bta+b+"), Tau::lambda);
    o.require(is_tau_term(*k, self).status == TauTermStatus::holds, "bta+b+ exact verdict");
    o.require(is_tau_term(*k, self, {.exact = false, .bound = kTauTermBound}).status != TauTermStatus::fails,
              "bta+b+ bounded verdict");
  });

  run(11, "rewriting properties", 0, [](Outcome& o) {
    constexpr Tau taus[] = {Tau::tau1, Tau::gamma, Tau::lambda, Tau::rho};
    std::size_t   bad    = 0;
    for (auto tau : taus) {
      // all rewrite sequences end in the same word
      std::map<Word, Word> normal;
      std::set<Word>       split;
      std::function<Word const*(Word const&)> end = [&](Word const& w) -> Word const* {
        if (auto it = normal.find(w); it != normal.end()) {
          return &it->second;
        }
        if (split.contains(w)) {
          return nullptr;
        }
        auto        sites = applicable_rules(w, tau);
        Word const* first = nullptr;
        Word        result = w;
        bool        ok     = true;
        for (auto s : sites) {
          auto e = end(apply_rule(w, s));
          if (!e || (first && *e != *first)) {
            ok = false;
            break;
          }
          first = e;
        }
        if (!ok) {
          split.insert(w);
          return nullptr;
        }
        if (first) {
          result = *first;
        }
        return &normal.emplace(w, result).first->second;
      };
      for (auto const& w : words_up_to("abc", kConfluenceLen)) {
        auto e = end(w);
        bad += !e || *e != normal_form(w, tau);
      }
    }
    o.require(bad == 0, std::to_string(bad) + " words with order-dependent normal forms");

    std::mt19937                       rng(20261015);
    std::uniform_int_distribution<int> len(0, 10), pick(0, 3), mark(0, 3);
    std::size_t                        mono = 0, dual = 0;
    for (int i = 0; i < kRandomCases; ++i) {
      Word w;
      for (int n = len(rng); n > 0; --n) {
        auto x = Symbol::intern(std::string(1, "abcd"[pick(rng)]));
        w += mark(rng) == 0 ? Letter::plus(x) : Letter::plain(x);
      }
      auto c   = Letter::plain(Symbol::intern(std::string(1, "abcd"[pick(rng)])));
      auto tau = taus[i % 4];
      auto u   = canonical(w, tau);
      mono += compose(u, c).size() < u.size() || compose(c, u).size() < u.size();
      dual += canonical(w.reversed(), Tau::rho).word() != canonical(w, Tau::lambda).word().reversed();
    }
    o.require(mono == 0, std::to_string(mono) + " monotonicity failures");
    o.require(dual == 0, std::to_string(dual) + " duality failures");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
