#include "dpm/derive.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace dpm {

  namespace {
    struct Pattern {
      std::vector<std::size_t> from;  // variable slots of the matched side
      std::vector<std::size_t> to;    // variable slots of the replacing side
      std::vector<Symbol>      vars;
      std::size_t              axiom;
      bool                     reversed;
    };

    std::vector<Pattern> compile_axioms(std::vector<Identity> const& axioms) {
      std::vector<Pattern> out;
      for (std::size_t i = 0; i < axioms.size(); ++i) {
        for (bool rev : {false, true}) {
          auto const& from = rev ? axioms[i].rhs : axioms[i].lhs;
          auto const& to   = rev ? axioms[i].lhs : axioms[i].rhs;
          Pattern     p{{}, {}, letters(axioms[i]), i, rev};
          auto slot = [&](Letter l) {
            return static_cast<std::size_t>(std::find(p.vars.begin(), p.vars.end(), l.base) - p.vars.begin());
          };
          for (auto l : from) {
            p.from.push_back(slot(l));
          }
          for (auto l : to) {
            p.to.push_back(slot(l));
          }
          out.push_back(std::move(p));
        }
      }
      return out;
    }

    using Span = std::pair<std::size_t, std::size_t>;  // [begin, end) in the current word
    constexpr Span kUnset{1, 0};

    // Calls visit(position, assignment) for every match of p.from at every
    // position of w; the assignment gives each variable a factor of w.
    void for_each_match(Word const&                                               w,
                        Pattern const&                                            p,
                        std::function<void(std::size_t, std::vector<Span> const&)> visit) {
      std::vector<Span> value(p.vars.size(), kUnset);
      std::function<void(std::size_t, std::size_t, std::size_t)> go = [&](std::size_t k, std::size_t pos,
                                                                          std::size_t start) {
        if (k == p.from.size()) {
          visit(start, value);
          return;
        }
        auto& v = value[p.from[k]];
        if (v != kUnset) {
          auto len = v.second - v.first;
          if (pos + len > w.size()) {
            return;
          }
          for (std::size_t i = 0; i < len; ++i) {
            if (w[pos + i] != w[v.first + i]) {
              return;
            }
          }
          go(k + 1, pos + len, start);
          return;
        }
        for (auto end = pos; end <= w.size(); ++end) {
          v = {pos, end};
          go(k + 1, end, start);
        }
        v = kUnset;
      };
      for (std::size_t start = 0; start <= w.size(); ++start) {
        go(0, start, start);
      }
    }

    struct Move {
      Word           after;
      DerivationStep step;
    };

    void for_each_move(Word const&                       w,
                       std::vector<Pattern> const&       patterns,
                       std::size_t                       max_len,
                       std::function<void(Move const&)>  visit) {
      for (auto const& p : patterns) {
        for_each_match(w, p, [&](std::size_t start, std::vector<Span> const& value) {
          std::size_t matched = 0;
          for (auto s : p.from) {
            matched += value[s].second - value[s].first;
          }
          std::size_t replaced = 0;
          for (auto s : p.to) {
            if (value[s] != kUnset) {
              replaced += value[s].second - value[s].first;
            }
          }
          if (w.size() - matched + replaced > max_len) {
            return;
          }
          Word after = w.subword(0, start);
          for (auto s : p.to) {
            if (value[s] != kUnset) {
              after += w.subword(value[s].first, value[s].second - value[s].first);
            }
          }
          after += w.subword(start + matched, w.size() - start - matched);
          if (after == w) {
            return;
          }
          DerivationStep step{w, after, p.axiom, p.reversed, {}, start};
          for (std::size_t i = 0; i < p.vars.size(); ++i) {
            auto v = value[i];
            step.substitution.emplace_back(p.vars[i], v == kUnset ? Word{} : w.subword(v.first, v.second - v.first));
          }
          visit(Move{std::move(after), std::move(step)});
        });
      }
    }

    DerivationStep flip(DerivationStep s) {
      std::swap(s.before, s.after);
      s.reversed = !s.reversed;
      return s;
    }

    Word apply(Word const& w, std::vector<std::pair<Symbol, Word>> const& sub) {
      Word out;
      for (auto l : w) {
        auto it = std::find_if(sub.begin(), sub.end(), [&](auto const& e) { return e.first == l.base; });
        if (it != sub.end()) {
          out += it->second;
        }
      }
      return out;
    }
  }  // namespace

  std::optional<DerivationTrace> derive_bounded(std::vector<Identity> const& axioms,
                                                Identity const&              goal,
                                                DeriveOptions const&         opts) {
    DerivationTrace trace{goal.lhs, goal.rhs, {}};
    if (goal.lhs == goal.rhs) {
      return trace;
    }
    if (goal.lhs.size() > opts.max_len || goal.rhs.size() > opts.max_len) {
      return std::nullopt;
    }
    auto patterns = compile_axioms(axioms);

    // parent step per side: word -> step that reached it (from the side's root)
    struct Side {
      std::unordered_map<Word, std::optional<DerivationStep>> parent;
      std::deque<Word>                                         frontier;
    };
    Side fwd, bwd;
    fwd.parent.emplace(goal.lhs, std::nullopt);
    fwd.frontier.push_back(goal.lhs);
    bwd.parent.emplace(goal.rhs, std::nullopt);
    bwd.frontier.push_back(goal.rhs);

    auto chain = [](Side const& side, Word w) {
      std::vector<DerivationStep> steps;
      while (auto const& s = side.parent.at(w)) {
        steps.push_back(*s);
        w = s->before;
      }
      std::reverse(steps.begin(), steps.end());
      return steps;  // root -> w
    };

    std::size_t expanded = 0;
    while (!fwd.frontier.empty() || !bwd.frontier.empty()) {
      bool  forward = bwd.frontier.empty() || (!fwd.frontier.empty() && fwd.frontier.size() <= bwd.frontier.size());
      Side& here    = forward ? fwd : bwd;
      Side& there   = forward ? bwd : fwd;
      // expand one whole BFS layer
      auto layer = here.frontier.size();
      for (std::size_t i = 0; i < layer; ++i) {
        if (++expanded > opts.max_steps) {
          return std::nullopt;
        }
        Word w = std::move(here.frontier.front());
        here.frontier.pop_front();
        std::optional<Word> meet;
        for_each_move(w, patterns, opts.max_len, [&](Move const& m) {
          if (meet || here.parent.contains(m.after)) {
            return;
          }
          here.parent.emplace(m.after, m.step);
          if (there.parent.contains(m.after)) {
            meet = m.after;
            return;
          }
          here.frontier.push_back(m.after);
        });
        if (meet) {
          auto front = chain(fwd, *meet);
          auto back  = chain(bwd, *meet);
          trace.steps = std::move(front);
          for (auto it = back.rbegin(); it != back.rend(); ++it) {
            trace.steps.push_back(flip(*it));
          }
          return trace;
        }
      }
    }
    return std::nullopt;
  }

  std::string check_trace(std::vector<Identity> const& axioms, DerivationTrace const& trace) {
    Word current = trace.start;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      auto const& s    = trace.steps[i];
      auto        fail = [&](std::string const& why) { return "step " + std::to_string(i + 1) + ": " + why; };
      if (s.before != current) {
        return fail("does not start at the previous word");
      }
      if (s.axiom >= axioms.size()) {
        return fail("unknown axiom");
      }
      auto const& from = s.reversed ? axioms[s.axiom].rhs : axioms[s.axiom].lhs;
      auto const& to   = s.reversed ? axioms[s.axiom].lhs : axioms[s.axiom].rhs;
      for (auto l : from) {
        if (std::none_of(s.substitution.begin(), s.substitution.end(),
                         [&](auto const& e) { return e.first == l.base; })) {
          return fail("substitution misses letter " + l.base.name());
        }
      }
      auto lhs = apply(from, s.substitution);
      auto rhs = apply(to, s.substitution);
      if (s.position + lhs.size() > current.size() || current.subword(s.position, lhs.size()) != lhs) {
        return fail("instance " + to_string(lhs) + " not found at position " + std::to_string(s.position));
      }
      Word next = current.subword(0, s.position) + rhs
                  + current.subword(s.position + lhs.size(), current.size() - s.position - lhs.size());
      if (next != s.after) {
        return fail("replacement gives " + to_string(next) + ", trace says " + to_string(s.after));
      }
      current = next;
    }
    if (current != trace.goal) {
      return "trace ends at " + to_string(current) + ", not at " + to_string(trace.goal);
    }
    return {};
  }

  DerivationTrace reverse_trace(DerivationTrace const& trace) {
    DerivationTrace out{trace.goal, trace.start, {}};
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
      out.steps.push_back(flip(*it));
    }
    return out;
  }

  std::string to_string(DerivationTrace const& trace, std::vector<Identity> const& axioms) {
    std::string out = to_string(trace.start);
    for (auto const& s : trace.steps) {
      out += "\n  = " + to_string(s.after) + "   by ";
      auto const& ax = axioms.at(s.axiom);
      out += s.reversed ? to_string(Identity{ax.rhs, ax.lhs}) : to_string(ax);
      out += " [";
      bool first = true;
      for (auto const& [x, w] : s.substitution) {
        out += (first ? "" : ", ") + x.name() + "->" + to_string(w);
        first = false;
      }
      out += "] at " + std::to_string(s.position);
    }
    return out;
  }

}  // namespace dpm
