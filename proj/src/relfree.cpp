#include "dpm/relfree.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace dpm {

  namespace {
    std::uint64_t checked_vector_length(FiniteMonoid const& m, std::size_t k, std::uint64_t budget) {
      if (m.size() > 255) {
        throw BudgetExceeded("evaluation vectors support at most 255 elements");
      }
      std::uint64_t len = 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (len > budget / m.size()) {
          throw BudgetExceeded("evaluation vector of " + std::to_string(m.size()) + "^"
                               + std::to_string(k) + " entries exceeds the budget");
        }
        len *= m.size();
      }
      return len;
    }

    // gen[c][a] = value assigned to letter c by the a-th map (first letter
    // most significant).
    std::vector<std::vector<std::uint8_t>> generator_vectors(FiniteMonoid const& m,
                                                             std::size_t         k,
                                                             std::size_t         length) {
      std::vector<std::vector<std::uint8_t>> gen(k, std::vector<std::uint8_t>(length));
      for (std::size_t a = 0; a < length; ++a) {
        auto rest = a;
        for (std::size_t c = k; c-- > 0;) {
          gen[c][a] = static_cast<std::uint8_t>(rest % m.size());
          rest /= m.size();
        }
      }
      return gen;
    }

    void multiply_into(FiniteMonoid const&              m,
                       std::uint8_t const*              state,
                       std::vector<std::uint8_t> const& gen,
                       std::uint8_t*                    out) {
      auto const  n     = m.size();
      auto const* table = m.table().data();
      for (std::size_t a = 0; a < gen.size(); ++a) {
        out[a] = static_cast<std::uint8_t>(table[state[a] * n + gen[a]]);
      }
    }

    std::size_t hash_bytes(std::uint8_t const* p, std::size_t len) {
      return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<char const*>(p), len));
    }
  }  // namespace

  RelFreeAutomaton::RelFreeAutomaton(FiniteMonoid const& m, std::vector<Symbol> letters, std::uint64_t budget)
      : letters_(std::move(letters)) {
    auto const k = letters_.size();
    length_      = static_cast<std::size_t>(checked_vector_length(m, k, budget));
    auto gen     = generator_vectors(m, k, length_);

    auto hash = [this](State s) { return hash_bytes(arena_.data() + s * length_, length_); };
    auto eq   = [this](State a, State b) {
      return std::equal(arena_.data() + a * length_, arena_.data() + (a + 1) * length_,
                        arena_.data() + b * length_);
    };
    std::unordered_set<State, decltype(hash), decltype(eq)> seen(64, hash, eq);

    arena_.assign(length_, static_cast<std::uint8_t>(m.identity()));
    seen.insert(0);
    if (k == 0) {
      return;
    }
    std::size_t states = 1;
    for (State s = 0; s < states; ++s) {
      for (std::size_t c = 0; c < k; ++c) {
        if ((states + 1) * length_ > budget) {
          throw BudgetExceeded("relatively free automaton exceeds " + std::to_string(budget)
                               + " bytes after " + std::to_string(states) + " states");
        }
        arena_.resize((states + 1) * length_);
        multiply_into(m, arena_.data() + s * length_, gen[c], arena_.data() + states * length_);
        auto candidate    = static_cast<State>(states);
        auto [it, is_new] = seen.insert(candidate);
        if (is_new) {
          ++states;
        } else {
          arena_.resize(states * length_);
        }
        transitions_.push_back(*it);
      }
    }
  }

  std::optional<std::size_t> RelFreeAutomaton::letter_index(Symbol x) const {
    auto it = std::find(letters_.begin(), letters_.end(), x);
    if (it == letters_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - letters_.begin());
  }

  RelFreeAutomaton::State RelFreeAutomaton::run(Word const& w) const {
    State s = initial();
    for (auto l : w) {
      auto c = letter_index(l.base);
      if (!c) {
        throw std::invalid_argument("letter " + l.base.name() + " is not in the automaton alphabet");
      }
      s = next(s, *c);
    }
    return s;
  }

  bool has_non_unit_power(FiniteMonoid const& m) {
    for (Elem x = 0; x < m.size(); ++x) {
      Elem p       = x;
      bool reaches = false;
      for (std::size_t i = 0; i <= m.size(); ++i) {
        if (p == m.identity()) {
          reaches = true;
          break;
        }
        p = m(p, x);
      }
      if (!reaches) {
        return true;
      }
    }
    return false;
  }

  namespace {
    std::vector<Symbol> sorted_content(Word const& w) {
      auto c = content(w);
      return {c.begin(), c.end()};
    }

    Word word_of(std::vector<Symbol> const& letters, std::vector<std::size_t> const& path) {
      Word w;
      for (auto c : path) {
        w += Letter::plain(letters[c]);
      }
      return w;
    }
  }  // namespace

  IsotermReport is_isoterm(FiniteMonoid const& m, Word const& w, std::uint64_t budget) {
    if (!w.is_plain()) {
      throw std::invalid_argument("is_isoterm: word must be plain");
    }
    IsotermReport report;
    if (w.empty()) {
      // M |= 1 = w' forces M |= 1 = x^n after identifying all letters.
      report.isoterm = has_non_unit_power(m);
      if (!report.isoterm) {
        Elem        x = 0;
        std::size_t n = 1;
        // every element has a power equal to 1; find n with x^n = 1 for all x
        for (; n <= 100000; ++n) {
          bool all = true;
          for (x = 0; x < m.size() && all; ++x) {
            Elem p = x;
            for (std::size_t i = 1; i < n; ++i) {
              p = m(p, x);
            }
            all = p == m.identity();
          }
          if (all) {
            break;
          }
        }
        Word xs;
        for (std::size_t i = 0; i < n; ++i) {
          xs += Letter::plain(Symbol::intern("x"));
        }
        report.counterexample = xs;
      }
      report.note = "empty word: decided by whether M satisfies 1 = x^n";
      return report;
    }
    auto            alphabet = sorted_content(w);
    RelFreeAutomaton a(m, alphabet, budget);
    report.states = a.state_count();
    report.note   = "identities with extra letters specialize to identities over the content of w "
                    "(extra letters to 1), or force 1 = x^n, which yields w = w^(n+1)";
    auto const target = a.run(w);
    auto const k      = alphabet.size();
    auto const n      = a.state_count();

    std::vector<std::vector<std::uint32_t>> preds(n);
    for (std::uint32_t s = 0; s < n; ++s) {
      for (std::size_t c = 0; c < k; ++c) {
        preds[a.next(s, c)].push_back(s);
      }
    }
    std::vector<bool> useful(n, false);
    std::vector<std::uint32_t> stack{target};
    useful[target] = true;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (auto p : preds[s]) {
        if (!useful[p]) {
          useful[p] = true;
          stack.push_back(p);
        }
      }
    }

    // Enumerate accepted words by DFS over useful states, detecting cycles.
    // Any cycle among useful states makes the language infinite.
    std::vector<int>         color(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> path;
    std::optional<Word>      other;
    bool                     cyclic = false;
    std::vector<std::size_t> cycle_prefix, cycle_loop;

    std::function<void(std::uint32_t)> dfs = [&](std::uint32_t s) {
      if (other || cyclic) {
        return;
      }
      if (s == target) {
        auto v = word_of(alphabet, path);
        if (v != w) {
          other = v;
          return;
        }
      }
      color[s] = 1;
      for (std::size_t c = 0; c < k && !other && !cyclic; ++c) {
        auto t = a.next(s, c);
        if (!useful[t]) {
          continue;
        }
        if (color[t] == 1) {
          cyclic       = true;
          cycle_prefix = path;
          cycle_prefix.push_back(c);
          return;
        }
        path.push_back(c);
        dfs(t);
        path.pop_back();
      }
      color[s] = 0;  // paths, not states: revisit through other prefixes
    };
    dfs(a.initial());

    if (other) {
      report.counterexample = other;
      return report;
    }
    if (cyclic) {
      // cycle_prefix reaches a state already on the current path; pumping
      // the loop gives infinitely many accepted words.
      RelFreeAutomaton::State s = a.initial();
      std::vector<RelFreeAutomaton::State> visited{s};
      for (auto c : cycle_prefix) {
        s = a.next(s, c);
        visited.push_back(s);
      }
      auto first = static_cast<std::size_t>(std::find(visited.begin(), visited.end(), s) - visited.begin());
      std::vector<std::size_t> pumped(cycle_prefix.begin(), cycle_prefix.end());
      pumped.insert(pumped.end(), cycle_prefix.begin() + static_cast<long>(first), cycle_prefix.end());
      // complete to the target along useful states (shortest path)
      std::vector<long>        parent(n, -1);
      std::vector<std::size_t> via(n, 0);
      std::vector<std::uint32_t> queue{s};
      parent[s] = s;
      for (std::size_t i = 0; i < queue.size() && parent[target] < 0; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
          auto t = a.next(queue[i], c);
          if (useful[t] && parent[t] < 0) {
            parent[t] = queue[i];
            via[t]    = c;
            queue.push_back(t);
          }
        }
      }
      std::vector<std::size_t> tail;
      for (auto t = target; t != s; t = static_cast<std::uint32_t>(parent[t])) {
        tail.push_back(via[t]);
      }
      std::reverse(tail.begin(), tail.end());
      pumped.insert(pumped.end(), tail.begin(), tail.end());
      auto v = word_of(alphabet, pumped);
      if (v == w) {
        pumped.insert(pumped.end() - static_cast<long>(tail.size()),
                      cycle_prefix.begin() + static_cast<long>(first), cycle_prefix.end());
        v = word_of(alphabet, pumped);
      }
      report.counterexample = v;
      return report;
    }
    report.isoterm = true;
    return report;
  }

  std::string_view to_string(TauTermStatus s) noexcept {
    switch (s) {
      case TauTermStatus::holds:
        return "holds";
      case TauTermStatus::fails:
        return "fails";
      case TauTermStatus::verified_up_to_bound:
        return "verified-up-to-bound";
    }
    return "?";
  }

  namespace {
    // Canonical words over content(u) of length <= |u|, plus a sink for
    // everything longer or containing a foreign letter. Transition by c is
    // state o c, valid because canonical(Vc) = canonical(V) o c.
    struct Tracker {
      std::vector<TauWord>                  nodes;
      std::vector<std::vector<std::size_t>> next;  // [node][letter]
      std::size_t                           sink;
      std::size_t                           start;
      std::size_t                           target;
    };

    Tracker make_tracker(TauWord const& u, std::vector<Symbol> const& letters) {
      Tracker                                 t;
      std::unordered_map<TauWord, std::size_t> index;
      auto add = [&](TauWord const& w) {
        auto [it, fresh] = index.try_emplace(w, t.nodes.size());
        if (fresh) {
          t.nodes.push_back(w);
        }
        return it->second;
      };
      auto u_content = content(u.word());
      t.start        = add(TauWord::canonical(Word{}, u.tau()));
      std::vector<std::vector<long>> raw;
      for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        std::vector<long> row;
        for (auto x : letters) {
          if (!u_content.contains(x)) {
            row.push_back(-1);
            continue;
          }
          auto nxt = compose(t.nodes[i], Letter::plain(x));
          row.push_back(nxt.size() <= u.size() ? static_cast<long>(add(nxt)) : -1);
        }
        raw.push_back(std::move(row));
      }
      t.sink = t.nodes.size();
      for (auto& row : raw) {
        std::vector<std::size_t> r;
        for (auto v : row) {
          r.push_back(v < 0 ? t.sink : static_cast<std::size_t>(v));
        }
        t.next.push_back(std::move(r));
      }
      t.next.emplace_back(letters.size(), t.sink);
      auto it  = index.find(u);
      t.target = it == index.end() ? t.sink : it->second;
      return t;
    }

    TauTermVerdict exact_tau_term(FiniteMonoid const&        m,
                                  TauWord const&             u,
                                  std::vector<Symbol> const& letters,
                                  std::uint64_t              budget) {
      RelFreeAutomaton a(m, letters, budget);
      auto             tracker = make_tracker(u, letters);
      auto const       k       = letters.size();
      auto const       width   = tracker.next.size();

      struct Info {
        std::uint64_t parent;
        std::size_t   letter;
      };
      std::unordered_map<std::uint64_t, Info> seen;
      std::vector<std::uint64_t>              order;
      auto key   = [&](std::uint64_t s, std::size_t t) { return s * width + t; };
      auto start = key(a.initial(), tracker.start);
      seen.emplace(start, Info{start, 0});
      order.push_back(start);
      for (std::size_t i = 0; i < order.size(); ++i) {
        auto s = order[i] / width;
        auto t = order[i] % width;
        for (std::size_t c = 0; c < k; ++c) {
          auto nk = key(a.next(static_cast<RelFreeAutomaton::State>(s), c), tracker.next[t][c]);
          if (seen.emplace(nk, Info{order[i], c}).second) {
            order.push_back(nk);
          }
        }
      }
      auto path_to = [&](std::uint64_t node) {
        std::vector<std::size_t> rev;
        while (node != start) {
          auto const& info = seen.at(node);
          rev.push_back(info.letter);
          node = info.parent;
        }
        std::reverse(rev.begin(), rev.end());
        return word_of(letters, rev);
      };

      TauTermVerdict v;
      v.exact  = true;
      v.states = a.state_count();
      // Rel-free states reached by class members, with their first (shortest) member.
      std::unordered_map<std::uint64_t, std::uint64_t> member_state;
      for (auto node : order) {
        if (node % width == tracker.target) {
          member_state.try_emplace(node / width, node);
        }
      }
      for (auto node : order) {
        auto s = node / width;
        auto t = node % width;
        if (t == tracker.target) {
          continue;
        }
        if (auto it = member_state.find(s); it != member_state.end()) {
          v.status  = TauTermStatus::fails;
          v.witness = std::pair{path_to(it->second), path_to(node)};
          return v;
        }
      }
      v.status = TauTermStatus::holds;
      return v;
    }

    TauTermVerdict bounded_tau_term(FiniteMonoid const&        m,
                                    TauWord const&             u,
                                    std::vector<Symbol> const& letters,
                                    std::size_t                bound,
                                    std::uint64_t              budget) {
      auto const k      = letters.size();
      auto const length = static_cast<std::size_t>(checked_vector_length(m, k, budget / (bound + 1)));
      auto const gen    = generator_vectors(m, k, length);
      auto const u_content = content(u.word());

      std::vector<std::vector<std::uint8_t>> stack(bound + 1, std::vector<std::uint8_t>(length));
      std::fill(stack[0].begin(), stack[0].end(), static_cast<std::uint8_t>(m.identity()));

      // pass 1: vectors of class members
      std::unordered_multimap<std::size_t, std::pair<Word, std::vector<std::uint8_t>>> members;
      // pass 2: shortest non-member word sharing a member's vector
      std::optional<std::pair<Word, Word>> witness;

      Word word;
      std::function<void(std::size_t, TauWord const&, bool, int)> dfs =
          [&](std::size_t depth, TauWord const& cls, bool foreign, int pass) {
            auto const& vec    = stack[depth];
            bool        member = !foreign && cls == u;
            auto        h      = hash_bytes(vec.data(), length);
            if (pass == 1 && member) {
              auto range = members.equal_range(h);
              auto same  = std::find_if(range.first, range.second,
                                        [&](auto const& e) { return e.second.second == vec; });
              if (same == range.second) {
                members.emplace(h, std::pair{word, vec});
              } else if (word.size() < same->second.first.size()) {
                same->second.first = word;  // keep the shortest member per vector
              }
            } else if (pass == 2 && !member) {
              auto range = members.equal_range(h);
              for (auto it = range.first; it != range.second; ++it) {
                auto total = it->second.first.size() + word.size();
                if (it->second.second == vec
                    && (!witness || total < witness->first.size() + witness->second.size())) {
                  witness = std::pair{it->second.first, word};
                }
              }
            }
            if (depth == bound) {
              return;
            }
            for (std::size_t c = 0; c < k; ++c) {
              multiply_into(m, vec.data(), gen[c], stack[depth + 1].data());
              bool fresh = !u_content.contains(letters[c]);
              word += Letter::plain(letters[c]);
              auto next = (foreign || fresh) ? cls : compose(cls, Letter::plain(letters[c]));
              dfs(depth + 1, next, foreign || fresh, pass);
              word = word.subword(0, word.size() - 1);
            }
          };
      auto empty = TauWord::canonical(Word{}, u.tau());
      dfs(0, empty, false, 1);
      dfs(0, empty, false, 2);

      TauTermVerdict v;
      v.bound = bound;
      if (witness) {
        v.status  = TauTermStatus::fails;
        v.witness = witness;
      } else {
        v.status = TauTermStatus::verified_up_to_bound;
      }
      return v;
    }
  }  // namespace

  TauTermVerdict is_tau_term(FiniteMonoid const& m, TauWord const& u, TauTermOptions const& opts) {
    auto letters = sorted_content(u.word());
    bool fresh   = !has_non_unit_power(m);
    if (fresh) {
      letters.push_back(Symbol::intern("z_fresh"));
    }
    std::string note = fresh ? "one fresh letter added: M satisfies some 1 = x^n, and all extra letters "
                               "of a witness can be identified"
                             : "no fresh letter: M satisfies no 1 = x^n, so both sides of any identity "
                               "of M have equal content";
    if (opts.exact) {
      try {
        auto v              = exact_tau_term(m, u, letters, opts.budget);
        v.fresh_letter_used = fresh;
        v.note              = note;
        return v;
      } catch (BudgetExceeded const& e) {
        note += "; exact mode over budget (" + std::string(e.what()) + "), bounded verdict";
      }
    }
    auto v              = bounded_tau_term(m, u, letters, opts.bound, opts.budget);
    v.fresh_letter_used = fresh;
    v.note              = note;
    return v;
  }

}  // namespace dpm
