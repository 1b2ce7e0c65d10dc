#include "dpm/claims.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "dpm/derive.hpp"
#include "dpm/expr.hpp"
#include "dpm/identity.hpp"
#include "dpm/isomorphism.hpp"
#include "dpm/relfree.hpp"
#include "dpm/tau.hpp"

namespace dpm {

  bool Claim::slow() const {
    std::istringstream in(provenance);
    for (std::string tag; in >> tag;) {
      if (tag == "slow") {
        return true;
      }
    }
    return false;
  }

  std::vector<std::string> const& claim_kinds() {
    static std::vector<std::string> const kinds{
        "monoid-size", "element-set", "satisfies",  "violates", "isomorphic", "j-trivial",         "aperiodic",
        "idempotents-commute", "tau-term", "not-tau-term", "isoterm", "derivable", "two-island-limited"};
    return kinds;
  }

  std::vector<Claim> parse_corpus(std::string_view text) {
    std::vector<Claim> out;
    std::set<std::string> ids;
    std::istringstream in{std::string(text)};
    std::size_t        lineno = 0;
    for (std::string line; std::getline(in, line);) {
      ++lineno;
      auto t = trim(line);
      if (t.empty() || t.starts_with("#")) {
        continue;
      }
      std::vector<std::string> f;
      std::size_t              start = 0;
      for (std::size_t pos; (pos = t.find(" | ", start)) != std::string::npos; start = pos + 3) {
        f.push_back(trim(std::string_view(t).substr(start, pos - start)));
      }
      f.push_back(trim(std::string_view(t).substr(start)));
      auto where = "corpus line " + std::to_string(lineno) + ": ";
      if (f.size() != 6) {
        throw CorpusError(where + "expected 6 fields separated by ' | ', got " + std::to_string(f.size()));
      }
      Claim c{f[0], f[1], f[2], f[3], f[4], f[5], lineno};
      auto const& kinds = claim_kinds();
      if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) {
        throw CorpusError(where + "unknown claim kind '" + c.kind + "'");
      }
      std::istringstream prov(c.provenance);
      std::string        tag;
      prov >> tag;
      if (tag != "PAPER" && tag != "DERIVED" && tag != "TRIVIAL") {
        throw CorpusError(where + "provenance must start with PAPER, DERIVED or TRIVIAL");
      }
      if (c.location.empty()) {
        throw CorpusError(where + "missing location");
      }
      if (!ids.insert(c.id).second) {
        throw CorpusError(where + "duplicate id '" + c.id + "'");
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<Claim> read_corpus(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw CorpusError("cannot read corpus " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
  }

  std::string default_corpus_path() {
    return std::string(DPM_DATA_DIR) + "/corpus.txt";
  }

  std::string corpus_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::string_view to_string(Verdict v) noexcept {
    switch (v) {
      case Verdict::pass:
        return "pass";
      case Verdict::fail:
        return "fail";
      case Verdict::skipped:
        return "skipped";
    }
    return "?";
  }

  namespace {
    struct Outcome {
      bool        ok;
      std::string actual;
    };

    std::vector<Identity> parse_identities(std::string const& text) {
      if (text.starts_with("long(") && text.ends_with(")")) {
        return {long_identity(static_cast<unsigned>(std::stoul(text.substr(5, text.size() - 6))))};
      }
      return parse_identity_chain(text);
    }

    bool expect_bool(std::string const& expected) {
      if (expected == "true") {
        return true;
      }
      if (expected == "false") {
        return false;
      }
      throw CorpusError("expected 'true' or 'false', got '" + expected + "'");
    }

    std::string bool_text(bool b) {
      return b ? "true" : "false";
    }

    std::vector<std::string> args(Claim const& c, std::size_t min, std::size_t max) {
      auto a = split_top_level(c.inputs, ';');
      if (a.size() < min || a.size() > max) {
        throw CorpusError("claim " + c.id + ": wrong number of ';'-separated inputs");
      }
      return a;
    }

    // "ab^2" and "abb" name the same element
    std::string norm_label(std::string const& l) {
      try {
        return to_string(parse_word(l));
      } catch (std::exception const&) {
        return l;
      }
    }

    std::set<std::string> label_set(std::string const& text) {
      auto t = trim(text);
      if (!t.starts_with("{") || !t.ends_with("}")) {
        throw CorpusError("element set must be written {a,b,...}");
      }
      std::set<std::string> out;
      for (auto const& l : split_top_level(t.substr(1, t.size() - 2), ',')) {
        out.insert(norm_label(l));
      }
      return out;
    }

    // "key=value" options trailing the inputs, e.g. "bound=10"
    std::size_t option(std::vector<std::string> const& a, std::string const& key, std::size_t fallback) {
      for (auto const& s : a) {
        if (s.starts_with(key + "=")) {
          return std::stoul(s.substr(key.size() + 1));
        }
      }
      return fallback;
    }

    Outcome run(Claim const& c, VerifyOptions const& opts) {
      SatisfactionOptions sat{opts.substitution_budget, c.slow() ? std::max(1u, opts.jobs) : 1u};
      auto const&         kind = c.kind;

      if (kind == "monoid-size") {
        auto m = eval_monoid(c.inputs);
        auto s = std::to_string(m->size());
        return {s == c.expected, s};
      }
      if (kind == "element-set") {
        auto        m = eval_monoid(c.inputs);
        std::string actual;
        for (auto const& l : m->labels()) {
          actual += (actual.empty() ? "{" : ",") + l;
        }
        actual += "}";
        std::set<std::string> got;
        for (auto const& l : m->labels()) {
          got.insert(norm_label(l));
        }
        return {got.size() == m->size() && got == label_set(c.expected), actual};
      }
      if (kind == "satisfies") {
        auto        a = args(c, 2, 64);
        auto        m = eval_monoid(a[0]);
        std::string failures;
        for (std::size_t i = 1; i < a.size(); ++i) {
          for (auto const& id : parse_identities(a[i])) {
            auto r = satisfies(*m, id, sat);
            if (!r.holds) {
              failures += (failures.empty() ? "" : "; ") + to_string(id) + " fails at "
                          + to_string(*r.witness, *m);
            }
          }
        }
        bool holds = failures.empty();
        return {holds == expect_bool(c.expected), holds ? "true" : failures};
      }
      if (kind == "violates") {
        auto a  = args(c, 2, 2);
        auto m  = eval_monoid(a[0]);
        auto id = parse_identity(a[1]);
        auto r  = satisfies(*m, id, sat);
        if (r.holds) {
          return {false, "holds"};
        }
        if (evaluate(*m, id.lhs, *r.witness) != r.lhs_value || evaluate(*m, id.rhs, *r.witness) != r.rhs_value
            || r.lhs_value == r.rhs_value) {
          return {false, "witness does not re-evaluate"};
        }
        std::string actual = "violated " + to_string(*r.witness, *m) + " lhs=" + m->label(r.lhs_value)
                             + " rhs=" + m->label(r.rhs_value);
        // "violated lhs=A rhs=B": some substitution must produce exactly these values
        std::istringstream in(c.expected);
        std::string        word, lhs, rhs;
        in >> word;
        if (word != "violated") {
          throw CorpusError("violates claims expect 'violated [lhs=L rhs=R]'");
        }
        for (std::string kv; in >> kv;) {
          if (kv.starts_with("lhs=")) {
            lhs = kv.substr(4);
          } else if (kv.starts_with("rhs=")) {
            rhs = kv.substr(4);
          }
        }
        if (lhs.empty() && rhs.empty()) {
          return {true, actual};
        }
        auto lv = m->find_label(lhs), rv = m->find_label(rhs);
        if (!lv || !rv) {
          return {false, actual + "; no elements " + lhs + ", " + rhs};
        }
        auto s = find_substitution_with_values(*m, id, *lv, *rv, sat);
        if (!s || evaluate(*m, id.lhs, *s) != *lv || evaluate(*m, id.rhs, *s) != *rv) {
          return {false, actual + "; no substitution gives lhs=" + lhs + " rhs=" + rhs};
        }
        return {true, "violated " + to_string(*s, *m) + " lhs=" + lhs + " rhs=" + rhs};
      }
      if (kind == "isomorphic") {
        auto a   = args(c, 2, 2);
        auto m   = eval_monoid(a[0]);
        auto n   = eval_monoid(a[1]);
        auto map = find_isomorphism(*m, *n);
        bool iso = map && is_isomorphism(*m, *n, *map);
        return {iso == expect_bool(c.expected), bool_text(iso)};
      }
      if (kind == "j-trivial") {
        auto r = is_j_trivial(*eval_monoid(c.inputs));
        return {r.j_trivial == expect_bool(c.expected), bool_text(r.j_trivial)};
      }
      if (kind == "aperiodic") {
        bool b = is_aperiodic(*eval_monoid(c.inputs));
        return {b == expect_bool(c.expected), bool_text(b)};
      }
      if (kind == "idempotents-commute") {
        bool b = idempotents_commute(*eval_monoid(c.inputs));
        return {b == expect_bool(c.expected), bool_text(b)};
      }
      if (kind == "tau-term" || kind == "not-tau-term") {
        auto           a = args(c, 3, 5);
        auto           m = eval_monoid(a[1]);
        auto           u = TauWord::canonical(parse_word(a[2]), parse_tau(a[0]));
        TauTermOptions o;
        o.budget = opts.automaton_budget;
        o.bound  = option(a, "bound", 10);
        o.exact  = option(a, "exact", 1) != 0;
        auto v   = is_tau_term(*m, u, o);
        std::string actual(to_string(v.status));
        if (v.status == TauTermStatus::verified_up_to_bound) {
          actual += " " + std::to_string(v.bound);
        }
        if (v.witness) {
          auto const& [U, w] = *v.witness;
          actual += " " + to_string(U) + " = " + to_string(w);
          // the witness must be a class member, a non-member, and an identity of M
          bool sound = TauWord::canonical(U, u.tau()) == u && !(TauWord::canonical(w, u.tau()) == u)
                       && satisfies(*m, Identity{U, w}, sat).holds;
          if (!sound) {
            return {false, actual + " (witness rejected)"};
          }
        }
        if (kind == "tau-term") {
          return {v.status != TauTermStatus::fails && c.expected == "holds", actual};
        }
        return {v.status == TauTermStatus::fails && c.expected == "fails", actual};
      }
      if (kind == "isoterm") {
        auto a = args(c, 2, 2);
        auto r = is_isoterm(*eval_monoid(a[0]), parse_word(a[1]), opts.automaton_budget);
        auto actual = bool_text(r.isoterm);
        if (r.counterexample) {
          actual += " " + a[1] + " = " + to_string(*r.counterexample);
        }
        return {r.isoterm == expect_bool(c.expected), actual};
      }
      if (kind == "derivable") {
        auto arrow = c.inputs.find("=>");
        if (arrow == std::string::npos) {
          throw CorpusError("derivable claims are written 'axiom; axiom => goal'");
        }
        std::vector<Identity> axioms;
        for (auto const& s : split_top_level(c.inputs.substr(0, arrow), ';')) {
          auto chain = parse_identities(s);
          axioms.insert(axioms.end(), chain.begin(), chain.end());
        }
        auto          goal_parts = split_top_level(c.inputs.substr(arrow + 2), ';');
        DeriveOptions d{option(goal_parts, "max_len", opts.derive_max_len),
                        option(goal_parts, "max_steps", opts.derive_max_steps)};
        auto          goal = parse_identity(goal_parts[0]);
        auto          t    = derive_bounded(axioms, goal, d);
        if (!t) {
          return {!expect_bool(c.expected), "none within bounds"};
        }
        auto problem = check_trace(axioms, *t);
        if (problem.empty()) {
          problem = check_trace(axioms, reverse_trace(*t));
        }
        if (!problem.empty()) {
          return {false, "invalid trace: " + problem};
        }
        return {expect_bool(c.expected), std::to_string(t->steps.size()) + " steps"};
      }
      if (kind == "two-island-limited") {
        auto a = args(c, 2, 2);
        auto u = TauWord::canonical(parse_word(a[1]), parse_tau(a[0]));
        auto r = two_island_limited(u, 8);
        if (r.canonical_limited != r.members_limited) {
          return {false, "canonical and class members disagree"};
        }
        return {r.canonical_limited == expect_bool(c.expected), bool_text(r.canonical_limited)};
      }
      throw CorpusError("unknown claim kind '" + kind + "'");
    }
  }  // namespace

  ClaimResult verify_claim(Claim const& c, VerifyOptions const& opts) {
    ClaimResult r{c.id, Verdict::fail, {}, c.expected, c.location, 0};
    auto        t0 = std::chrono::steady_clock::now();
    if (c.slow() && !opts.slow && opts.jobs <= 1) {
      r.verdict = Verdict::skipped;
      r.actual  = "slow claim (use --slow or --jobs)";
    } else {
      try {
        auto o    = run(c, opts);
        r.verdict = o.ok ? Verdict::pass : Verdict::fail;
        r.actual  = o.actual;
      } catch (BudgetExceeded const& e) {
        r.verdict = Verdict::skipped;
        r.actual  = std::string("budget: ") + e.what();
      } catch (std::exception const& e) {
        r.verdict = Verdict::fail;
        r.actual  = std::string("error: ") + e.what();
      }
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  ClaimReport verify_corpus(std::string_view corpus_text, VerifyOptions const& opts) {
    auto               claims = parse_corpus(corpus_text);
    std::vector<Claim> selected;
    for (auto& c : claims) {
      if (c.id.starts_with(opts.filter)) {
        selected.push_back(std::move(c));
      }
    }
    ClaimReport report{corpus_hash(corpus_text), std::vector<ClaimResult>(selected.size())};
    std::atomic<std::size_t> next{0};
    auto                     worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < selected.size();) {
        report.results[i] = verify_claim(selected[i], opts);
      }
    };
    auto threads = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(selected.size())));
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    std::sort(report.results.begin(), report.results.end(),
              [](ClaimResult const& a, ClaimResult const& b) { return a.id < b.id; });
    return report;
  }

  bool ClaimReport::all_passed() const {
    return count(Verdict::fail) == 0;
  }

  std::size_t ClaimReport::count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](ClaimResult const& r) { return r.verdict == v; }));
  }

  void write_report(std::ostream& out, ClaimReport const& r, bool with_timing) {
    out << "# corpus " << r.hash << "\n";
    for (auto const& c : r.results) {
      out << c.id << '\t' << to_string(c.verdict) << '\t' << c.actual << '\t' << c.expected << '\t'
          << c.location << '\t';
      if (with_timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", c.millis);
        out << buf;
      } else {
        out << '-';
      }
      out << '\n';
    }
    out << "# pass " << r.count(Verdict::pass) << " fail " << r.count(Verdict::fail) << " skipped "
        << r.count(Verdict::skipped) << "\n";
  }

}  // namespace dpm
