#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dpm/claims.hpp"
#include "dpm/derive.hpp"
#include "dpm/dp_construct.hpp"
#include "dpm/expr.hpp"
#include "dpm/identity.hpp"
#include "dpm/isomorphism.hpp"
#include "dpm/lattice.hpp"
#include "dpm/presentation.hpp"
#include "dpm/relfree.hpp"
#include "dpm/tau.hpp"

using namespace dpm;

namespace {

  std::string slurp(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void emit(std::string const& text, std::string const& out_path) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(out_path);
    if (!out) {
      throw std::runtime_error("cannot write " + out_path);
    }
    out << text;
  }

  Presentation load_presentation(std::string const& arg) {
    auto names = presentation_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) {
      return named_presentation(arg);
    }
    if (trim(arg).starts_with("<") || arg.find('|') != std::string::npos) {
      return parse_presentation(arg);
    }
    return parse_presentation(slurp(arg));
  }

  std::string print_semigroup(FiniteSemigroup const& s) {
    std::string out = "SEMIGROUP " + std::to_string(s.size) + "\n";
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
      out += (i ? " " : "") + s.labels[i];
    }
    out += "\n";
    for (Elem a = 0; a < s.size; ++a) {
      for (Elem b = 0; b < s.size; ++b) {
        out += (b ? " " : "") + std::to_string(s(a, b));
      }
      out += "\n";
    }
    return out;
  }

  std::vector<Word> parse_words(std::vector<std::string> const& texts) {
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(parse_word(t));
    }
    return out;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dilworth-Perkins monoids, tau-words and identity checking"};
  app.require_subcommand(1);
  int status = 0;

  std::string              tau_name, word_a, word_b, monoid_a, monoid_b, out_path, identity_text, axioms_path;
  std::vector<std::string> words;
  bool                     adjoin = false;

  auto* canon = app.add_subcommand("canon", "canonical form of a word");
  canon->add_option("tau", tau_name)->required();
  canon->add_option("word", word_a)->required();
  canon->callback([&] { std::cout << to_string(canonical(parse_word(word_a), parse_tau(tau_name))) << "\n"; });

  auto* comp = app.add_subcommand("compose", "product of two tau-words");
  comp->add_option("tau", tau_name)->required();
  comp->add_option("w1", word_a)->required();
  comp->add_option("w2", word_b)->required();
  comp->callback([&] {
    auto tau = parse_tau(tau_name);
    std::cout << to_string(compose(canonical(parse_word(word_a), tau), canonical(parse_word(word_b), tau))) << "\n";
  });

  auto* lower = app.add_subcommand("lower-set", "all tau-words below the given ones");
  lower->add_option("tau", tau_name)->required();
  lower->add_option("words", words);
  lower->callback([&] {
    auto ls = lower_set(TauWordSet(parse_tau(tau_name), parse_words(words)));
    for (auto const& u : ls) {
      std::cout << to_string(u) << "\n";
    }
    std::cerr << ls.size() << " tau-words\n";
  });

  auto* build = app.add_subcommand("build", "the monoid M_tau(W)");
  build->add_option("tau", tau_name)->required();
  build->add_option("words", words);
  build->add_option("--out", out_path, "write the monoid file here");
  build->callback([&] {
    auto m = build_monoid(TauWordSet(parse_tau(tau_name), parse_words(words)));
    emit(to_text(m), out_path);
    std::cerr << m.size() << " elements\n";
  });

  auto* present = app.add_subcommand("present", "close a presentation (A, E, A0, S, <...> or a file)");
  present->add_option("presentation", monoid_a)->required();
  present->add_flag("--adjoin-1", adjoin, "adjoin an identity element");
  present->add_option("--out", out_path);
  present->callback([&] {
    auto s = semigroup_from_presentation(load_presentation(monoid_a));
    if (adjoin) {
      emit(to_text(adjoin_identity(s)), out_path);
    } else {
      emit(print_semigroup(s), out_path);
    }
  });

  SatisfactionOptions sat;
  auto* check = app.add_subcommand("check", "does the monoid satisfy the identity");
  check->add_option("monoid", monoid_a)->required();
  check->add_option("identity", identity_text)->required();
  check->add_option("--threads", sat.threads);
  check->add_option("--budget", sat.budget, "maximum number of substitutions");
  check->callback([&] {
    auto m = eval_monoid(monoid_a);
    for (auto const& id : parse_identity_chain(identity_text)) {
      std::cerr << "checking " << to_string(id) << " over " << satisfaction_cost(*m, id) << " substitutions\n";
      auto r = satisfies(*m, id, sat);
      if (r.holds) {
        std::cout << "holds: " << to_string(id) << "\n";
      } else {
        std::cout << "fails: " << to_string(id) << " at " << to_string(*r.witness, *m)
                  << " lhs=" << m->label(r.lhs_value) << " rhs=" << m->label(r.rhs_value)
                  << (r.parallel ? " (parallel scan)" : "") << "\n";
        status = 1;
      }
    }
  });

  std::uint64_t budget = kDefaultAutomatonBudget;
  auto* isoterm = app.add_subcommand("isoterm", "is the word an isoterm for the monoid");
  isoterm->add_option("monoid", monoid_a)->required();
  isoterm->add_option("word", word_a)->required();
  isoterm->add_option("--budget", budget, "automaton bytes");
  isoterm->callback([&] {
    auto m = eval_monoid(monoid_a);
    auto r = is_isoterm(*m, parse_word(word_a), budget);
    std::cout << (r.isoterm ? "isoterm" : "not an isoterm");
    if (r.counterexample) {
      std::cout << ": " << word_a << " = " << to_string(*r.counterexample) << " holds";
    }
    std::cout << " (" << r.states << " states)\n";
    status = r.isoterm ? 0 : 1;
  });

  TauTermOptions tt;
  bool           bounded_only = false;
  auto* tauterm = app.add_subcommand("tau-term", "is the tau-word a tau-term for the monoid");
  tauterm->add_option("tau", tau_name)->required();
  tauterm->add_option("monoid", monoid_a)->required();
  tauterm->add_option("word", word_a)->required();
  tauterm->add_option("--bound", tt.bound, "word length cap for bounded mode");
  tauterm->add_flag("--bounded", bounded_only, "skip the exact automaton method");
  tauterm->add_option("--budget", tt.budget, "automaton bytes");
  tauterm->callback([&] {
    tt.exact = !bounded_only;
    auto m   = eval_monoid(monoid_a);
    auto u   = canonical(parse_word(word_a), parse_tau(tau_name));
    auto v   = is_tau_term(*m, u, tt);
    std::cout << to_string(v.status);
    if (v.status == TauTermStatus::verified_up_to_bound) {
      std::cout << " " << v.bound;
    }
    if (v.witness) {
      std::cout << ": " << to_string(v.witness->first) << " = " << to_string(v.witness->second);
    }
    std::cout << (v.exact ? " [exact]" : " [bounded]") << "\n" << v.note << "\n";
    status = v.status == TauTermStatus::fails ? 1 : 0;
  });

  DeriveOptions dopts;
  auto* derive = app.add_subcommand("derive", "search for a derivation of an identity");
  derive->add_option("axioms", axioms_path, "file with one identity per line, or identities separated by ';'")->required();
  derive->add_option("goal", identity_text)->required();
  derive->add_option("--max-len", dopts.max_len);
  derive->add_option("--max-steps", dopts.max_steps);
  derive->callback([&] {
    std::vector<Identity> axioms;
    if (std::ifstream(axioms_path)) {
      axioms = parse_identity_lines(slurp(axioms_path));
    } else {
      for (auto const& part : split_top_level(axioms_path, ';')) {
        auto chain = parse_identity_chain(part);
        axioms.insert(axioms.end(), chain.begin(), chain.end());
      }
    }
    auto goal   = parse_identity(identity_text);
    auto t      = derive_bounded(axioms, goal, dopts);
    if (!t) {
      std::cout << "no derivation within bounds\n";
      status = 1;
      return;
    }
    auto problem = check_trace(axioms, *t);
    std::cout << to_string(*t, axioms) << "\n";
    if (!problem.empty()) {
      std::cout << "trace check failed: " << problem << "\n";
      status = 1;
    }
  });

  auto add_property = [&](char const* name, char const* help, auto test) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("monoid", monoid_a)->required();
    sub->callback([&, test] {
      auto m  = eval_monoid(monoid_a);
      bool ok = test(*m);
      std::cout << (ok ? "yes" : "no") << "\n";
      status = ok ? 0 : 1;
    });
  };
  add_property("jtrivial", "is the monoid J-trivial", [](FiniteMonoid const& m) {
    auto r = is_j_trivial(m);
    if (r.violating_pair) {
      std::cerr << "J-equivalent: " << m.label(r.violating_pair->first) << " "
                << m.label(r.violating_pair->second) << "\n";
    }
    return r.j_trivial;
  });
  add_property("aperiodic", "is the monoid aperiodic", [](FiniteMonoid const& m) { return is_aperiodic(m); });
  add_property("idem-commute", "do the idempotents commute",
               [](FiniteMonoid const& m) { return idempotents_commute(m); });

  auto* iso = app.add_subcommand("iso", "find an isomorphism");
  iso->add_option("m1", monoid_a)->required();
  iso->add_option("m2", monoid_b)->required();
  iso->callback([&] {
    auto m   = eval_monoid(monoid_a);
    auto n   = eval_monoid(monoid_b);
    auto map = find_isomorphism(*m, *n);
    if (!map) {
      std::cout << "not isomorphic\n";
      status = 1;
      return;
    }
    for (Elem a = 0; a < m->size(); ++a) {
      std::cout << m->label(a) << " -> " << n->label((*map)[a]) << "\n";
    }
  });

  auto* dual_cmd = app.add_subcommand("dual", "the dual monoid");
  dual_cmd->add_option("monoid", monoid_a)->required();
  dual_cmd->add_option("--out", out_path);
  dual_cmd->callback([&] { emit(to_text(dual(*eval_monoid(monoid_a))), out_path); });

  auto* product = app.add_subcommand("product", "direct product");
  product->add_option("m1", monoid_a)->required();
  product->add_option("m2", monoid_b)->required();
  product->add_option("--out", out_path);
  product->callback([&] {
    emit(to_text(direct_product(*eval_monoid(monoid_a), *eval_monoid(monoid_b))), out_path);
  });

  VerifyOptions vopts;
  std::string   corpus_path = default_corpus_path(), report_path;
  auto* verify = app.add_subcommand("verify-paper", "verify the claim corpus");
  verify->add_option("--filter", vopts.filter, "claim id prefix");
  verify->add_option("--jobs", vopts.jobs, "parallel workers");
  verify->add_flag("--slow", vopts.slow, "include slow claims");
  verify->add_option("--report", report_path, "write the report here instead of stdout");
  verify->add_option("--corpus", corpus_path);
  verify->add_option("--budget", vopts.substitution_budget, "maximum substitutions per identity");
  verify->add_option("--automaton-budget", vopts.automaton_budget, "automaton bytes");
  verify->add_option("--max-len", vopts.derive_max_len);
  verify->add_option("--max-steps", vopts.derive_max_steps);
  verify->callback([&] {
    auto report = verify_corpus(slurp(corpus_path), vopts);
    if (report_path.empty()) {
      write_report(std::cout, report);
    } else {
      std::ofstream out(report_path);
      write_report(out, report);
    }
    std::cerr << report.count(Verdict::pass) << " pass, " << report.count(Verdict::fail) << " fail, "
              << report.count(Verdict::skipped) << " skipped\n";
    status = report.all_passed() ? 0 : 1;
  });

  auto* dot = app.add_subcommand("lattice-dot", "DOT graph of the lattice with separating identities");
  dot->add_option("--out", out_path);
  dot->callback([&] { emit(to_dot(build_lattice()), out_path); });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
