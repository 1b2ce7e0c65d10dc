#include "dpm/dp_construct.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace dpm {

  TauWordSet::TauWordSet(Tau tau, std::span<Word const> words) : tau_(tau) {
    for (auto const& w : words) {
      insert(TauWord::canonical(w, tau));
    }
  }

  void TauWordSet::insert(TauWord const& u) {
    if (u.tau() != tau_) {
      throw std::invalid_argument("TauWordSet: mismatched congruence");
    }
    auto cmp = [](TauWord const& a, TauWord const& b) { return display_less(a.word(), b.word()); };
    auto it  = std::lower_bound(words_.begin(), words_.end(), u, cmp);
    if (it == words_.end() || !(*it == u)) {
      words_.insert(it, u);
    }
  }

  namespace {
    // Canonical words over a fixed content of length <= max_len, with the
    // edges x -> x o c and x -> c o x for plain letters c. Every such word
    // is reached from 1 by right multiplication because plain letters
    // generate and letter multiplication never shortens.
    struct FactorGraph {
      std::vector<Letter>                 letters;
      std::vector<TauWord>                nodes;
      std::unordered_map<TauWord, long>   index;
      std::vector<std::vector<long>>      right;  // [node][letter], -1 = too long
      std::vector<std::vector<long>>      left;

      long find(TauWord const& u) const {
        auto it = index.find(u);
        return it == index.end() ? -1 : it->second;
      }
    };

    FactorGraph factor_graph(Tau tau, SymbolSet const& alphabet, std::size_t max_len) {
      FactorGraph g;
      for (auto x : alphabet) {
        g.letters.push_back(Letter::plain(x));
      }
      auto add = [&](TauWord const& u) {
        auto [it, inserted] = g.index.try_emplace(u, static_cast<long>(g.nodes.size()));
        if (inserted) {
          g.nodes.push_back(u);
        }
        return it->second;
      };
      add(TauWord::canonical(Word{}, tau));
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        std::vector<long> row;
        for (auto c : g.letters) {
          auto next = compose(g.nodes[i], c);
          row.push_back(next.size() <= max_len ? add(next) : -1);
        }
        g.right.push_back(std::move(row));
      }
      for (auto const& node : g.nodes) {
        std::vector<long> row;
        for (auto c : g.letters) {
          auto next = compose(c, node);
          long j    = next.size() <= max_len ? g.find(next) : -1;
          if (next.size() <= max_len && j < 0) {
            throw std::logic_error("factor graph is not closed under left multiplication");
          }
          row.push_back(j);
        }
        g.left.push_back(std::move(row));
      }
      return g;
    }

    // Nodes from which target is reachable along the chosen edge families.
    std::vector<bool> backward_closure(FactorGraph const& g, long target, bool use_right, bool use_left) {
      std::vector<std::vector<long>> preds(g.nodes.size());
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t c = 0; c < g.letters.size(); ++c) {
          if (use_right && g.right[i][c] >= 0) {
            preds[g.right[i][c]].push_back(static_cast<long>(i));
          }
          if (use_left && g.left[i][c] >= 0) {
            preds[g.left[i][c]].push_back(static_cast<long>(i));
          }
        }
      }
      std::vector<bool> seen(g.nodes.size(), false);
      std::vector<long> stack{target};
      seen[target] = true;
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto p : preds[x]) {
          if (!seen[p]) {
            seen[p] = true;
            stack.push_back(p);
          }
        }
      }
      return seen;
    }

    bool subset(SymbolSet const& a, SymbolSet const& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end(), SymbolNameLess{});
    }
  }  // namespace

  bool leq_tau(TauWord const& v, TauWord const& u) {
    if (v.tau() != u.tau()) {
      throw std::invalid_argument("leq_tau: mismatched congruences");
    }
    if (v.size() > u.size() || !subset(content(v.word()), content(u.word()))) {
      return false;
    }
    auto g      = factor_graph(u.tau(), content(u.word()), u.size());
    long target = g.find(u);
    long start  = g.find(v);
    if (target < 0 || start < 0) {
      throw std::logic_error("leq_tau: canonical word missing from factor graph");
    }
    // Prefix side: x with x o s = u.
    auto prefixes = backward_closure(g, target, true, false);
    // Left multiples of v.
    std::vector<bool> seen(g.nodes.size(), false);
    std::vector<long> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      if (prefixes[x]) {
        return true;
      }
      for (auto y : g.left[x]) {
        if (y >= 0 && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  namespace {
    using LowerSetKey = std::pair<Tau, std::vector<std::string>>;

    std::mutex                                             cache_mutex;
    std::map<LowerSetKey, std::vector<TauWord>>            lower_set_cache;
  }  // namespace

  std::vector<TauWord> lower_set(TauWordSet const& w) {
    LowerSetKey key{w.tau(), {}};
    for (auto const& u : w.words()) {
      key.second.push_back(to_string(u));
    }
    {
      std::lock_guard lock(cache_mutex);
      auto            it = lower_set_cache.find(key);
      if (it != lower_set_cache.end()) {
        return it->second;
      }
    }
    std::unordered_set<TauWord> found;
    for (auto const& u : w.words()) {
      auto g    = factor_graph(w.tau(), content(u.word()), u.size());
      auto down = backward_closure(g, g.find(u), true, true);
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (down[i]) {
          found.insert(g.nodes[i]);
        }
      }
    }
    std::vector<TauWord> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(),
              [](TauWord const& a, TauWord const& b) { return display_less(a.word(), b.word()); });
    std::lock_guard lock(cache_mutex);
    lower_set_cache.emplace(std::move(key), out);
    return out;
  }

  std::string element_label(TauWord const& u) {
    auto s = to_string(u);
    std::replace(s.begin(), s.end(), ' ', '.');
    return s;
  }

  FiniteMonoid build_monoid(TauWordSet const& w) {
    auto elems = lower_set(w);
    if (elems.empty()) {
      return FiniteMonoid(1, 0, Elem{0}, {0}, {"0"});
    }
    std::size_t                       n    = elems.size() + 1;
    auto                              zero = static_cast<Elem>(elems.size());
    std::unordered_map<TauWord, Elem> index;
    std::vector<std::string>          labels;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      index.emplace(elems[i], static_cast<Elem>(i));
      labels.push_back(element_label(elems[i]));
    }
    labels.push_back("0");
    std::vector<Elem> table(n * n, zero);
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = 0; b < elems.size(); ++b) {
        auto p = compose(elems[a], elems[b]);
        if (auto it = index.find(p); it != index.end()) {
          table[a * n + b] = it->second;
        }
      }
    }
    // The lower set always contains 1, sorted first.
    return FiniteMonoid(n, 0, zero, std::move(table), std::move(labels));
  }

}  // namespace dpm
