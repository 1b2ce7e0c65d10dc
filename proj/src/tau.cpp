#include "dpm/tau.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dpm {

  std::string_view to_string(Tau tau) noexcept {
    switch (tau) {
      case Tau::trivial:
        return "trivial";
      case Tau::tau1:
        return "tau1";
      case Tau::gamma:
        return "gamma";
      case Tau::lambda:
        return "lambda";
      case Tau::rho:
        return "rho";
    }
    return "?";
  }

  Tau parse_tau(std::string_view name) {
    for (auto t : {Tau::trivial, Tau::tau1, Tau::gamma, Tau::lambda, Tau::rho}) {
      if (to_string(t) == name) {
        return t;
      }
    }
    throw std::invalid_argument("unknown congruence '" + std::string(name)
                                + "' (expected trivial, tau1, gamma, lambda or rho)");
  }

  namespace {
    // Context condition of the a -> a+ rule at position i.
    bool has_context(Word const& w, std::size_t i, Tau tau) {
      Symbol a = w[i].base;
      switch (tau) {
        case Tau::trivial:
          return false;
        case Tau::tau1:
          return true;
        case Tau::gamma: {
          std::size_t plain = 0;
          for (auto l : w) {
            if (l.base == a) {
              if (l.plussed) {
                return true;
              }
              ++plain;
            }
          }
          return plain >= 2;
        }
        case Tau::lambda:
          for (std::size_t j = 0; j < i; ++j) {
            if (w[j].base == a) {
              return true;
            }
          }
          return false;
        case Tau::rho:
          for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (w[j].base == a) {
              return true;
            }
          }
          return false;
      }
      return false;
    }
  }  // namespace

  std::vector<RuleSite> applicable_rules(Word const& w, Tau tau) {
    std::vector<RuleSite> out;
    if (tau == Tau::trivial) {
      return out;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].plussed && has_context(w, i, tau)) {
        out.push_back({Rule::to_plus, i});
      }
      if (i + 1 < w.size() && w[i].base == w[i + 1].base) {
        bool p = w[i].plussed, q = w[i + 1].plussed;
        if (p && q) {
          out.push_back({Rule::plus_plus, i});
        } else if (!p && q) {
          out.push_back({Rule::plain_plus, i});
        } else if (p && !q) {
          out.push_back({Rule::plus_plain, i});
        }
      }
    }
    return out;
  }

  Word apply_rule(Word const& w, RuleSite site) {
    std::vector<Letter> letters = w.letters();
    if (site.rule == Rule::to_plus) {
      letters.at(site.position).plussed = true;
    } else {
      auto i           = site.position;
      letters.at(i)    = Letter::plus(letters.at(i).base);
      letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return Word(std::move(letters));
  }

  Word rewrite_leftmost(Word w, Tau tau) {
    if (tau == Tau::trivial && !w.is_plain()) {
      throw std::invalid_argument("trivial congruence applied to marked word " + to_string(w));
    }
    while (true) {
      auto sites = applicable_rules(w, tau);
      if (sites.empty()) {
        return w;
      }
      // Sites are generated by position, to_plus first at each position.
      w = apply_rule(w, sites.front());
    }
  }

  Word normal_form(Word const& w, Tau tau) {
    if (tau == Tau::trivial) {
      if (!w.is_plain()) {
        throw std::invalid_argument("trivial congruence applied to marked word " + to_string(w));
      }
      return w;
    }
    std::vector<Letter> out;
    out.reserve(w.size());
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i + 1;
      while (j < w.size() && w[j].base == w[i].base) {
        ++j;
      }
      if (j - i >= 2) {
        out.push_back(Letter::plus(w[i].base));
      } else {
        out.push_back({w[i].base, w[i].plussed || has_context(w, i, tau)});
      }
      i = j;
    }
    return Word(std::move(out));
  }

  bool is_irreducible(Word const& w, Tau tau) {
    if (tau == Tau::trivial) {
      return w.is_plain();
    }
    return applicable_rules(w, tau).empty();
  }

  TauWord TauWord::canonical(Word const& w, Tau tau) {
    return TauWord(normal_form(w, tau), tau);
  }

  TauWord TauWord::from_irreducible(Word w, Tau tau) {
    if (!is_irreducible(w, tau)) {
      throw std::invalid_argument(to_string(w) + " is not irreducible under "
                                  + std::string(to_string(tau)));
    }
    return TauWord(std::move(w), tau);
  }

  std::string to_string(TauWord const& u) {
    return to_string(u.word());
  }

  TauWord compose(TauWord const& u, TauWord const& v) {
    if (u.tau() != v.tau()) {
      throw std::invalid_argument("compose: mismatched congruences "
                                  + std::string(to_string(u.tau())) + " and "
                                  + std::string(to_string(v.tau())));
    }
    return TauWord::canonical(u.word() + v.word(), u.tau());
  }

  TauWord compose(TauWord const& u, Letter c) {
    return TauWord::canonical(u.word() + c, u.tau());
  }

  TauWord compose(Letter c, TauWord const& u) {
    return TauWord::canonical(Word{c} + u.word(), u.tau());
  }

  bool tau_equal(Word const& u, Word const& v, Tau tau) {
    return normal_form(u, tau) == normal_form(v, tau);
  }

  namespace {
    void members_dfs(TauWord const&              target,
                     std::vector<Letter> const&  alphabet,
                     std::size_t                 max_len,
                     Word&                       prefix,
                     TauWord const&              prefix_class,
                     std::vector<Word>&          out) {
      if (prefix_class == target) {
        out.push_back(prefix);
      }
      if (prefix.size() == max_len) {
        return;
      }
      for (auto c : alphabet) {
        auto next = compose(prefix_class, c);
        // Letter multiplication never shortens a canonical word.
        if (next.size() > target.size()) {
          continue;
        }
        prefix += c;
        members_dfs(target, alphabet, max_len, prefix, next, out);
        prefix = prefix.subword(0, prefix.size() - 1);
      }
    }
  }  // namespace

  std::vector<Word> class_members(TauWord const& u, std::size_t max_len) {
    std::vector<Letter> alphabet;
    for (auto x : content(u.word())) {
      alphabet.push_back(Letter::plain(x));
    }
    std::vector<Word> out;
    Word              prefix;
    members_dfs(u, alphabet, max_len, prefix, TauWord::canonical(Word{}, u.tau()), out);
    std::sort(out.begin(), out.end(), display_less);
    return out;
  }

  IslandCheck two_island_limited(TauWord const& u, std::size_t member_bound) {
    IslandCheck check{is_two_island_limited(u.word()), true, member_bound, 0};
    for (auto const& m : class_members(u, member_bound)) {
      ++check.members_checked;
      if (!is_two_island_limited(m)) {
        check.members_limited = false;
      }
    }
    return check;
  }

}  // namespace dpm
