#pragma once

// Reference implementations used only by the tests. They follow the
// definitions directly and share no code with the library algorithms.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dpm/identity.hpp"
#include "dpm/monoid.hpp"
#include "dpm/tau.hpp"

namespace oracle {

  // Plain words as strings of single-character letters.
  using Plain = std::string;

  inline std::string collapse(Plain const& w) {
    std::string out;
    for (char c : w) {
      if (out.empty() || out.back() != c) {
        out += c;
      }
    }
    return out;
  }

  inline std::set<char> multiple(Plain const& w) {
    std::set<char> out;
    for (char c : w) {
      if (std::count(w.begin(), w.end(), c) >= 2) {
        out.insert(c);
      }
    }
    return out;
  }

  // Key such that u tau v iff key(u) == key(v), straight from the
  // definitions of tau1, gamma, lambda and rho.
  inline std::tuple<std::string, std::set<char>, std::set<char>> tau_key(Plain const& w, dpm::Tau tau) {
    using dpm::Tau;
    if (tau == Tau::trivial) {
      return {w, {}, {}};
    }
    if (tau == Tau::tau1) {
      return {collapse(w), {}, {}};
    }
    auto           mul = multiple(w);
    std::set<char> adjacent;
    for (char c : mul) {
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == c) {
          pos.push_back(i);
        }
      }
      bool adj = tau == Tau::lambda ? pos[1] == pos[0] + 1 : pos[pos.size() - 1] == pos[pos.size() - 2] + 1;
      if (adj) {
        adjacent.insert(c);
      }
    }
    if (tau == Tau::gamma) {
      adjacent.clear();
    }
    return {collapse(w), mul, adjacent};
  }

  inline std::vector<Plain> all_words(std::string const& alphabet, std::size_t max_len) {
    std::vector<Plain> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() < max_len) {
        for (char c : alphabet) {
          out.push_back(out[i] + c);
        }
      }
    }
    return out;
  }

  inline dpm::Word to_word(Plain const& w) {
    return w.empty() ? dpm::Word{} : dpm::parse_word(w);
  }

  // Every class v <= u is the class of a factor of a member of u; members up
  // to member_len letters are enumerated over the letters of u.
  inline std::set<std::string> lower_set_by_factors(Plain const& u_member, dpm::Tau tau, std::size_t member_len) {
    std::string alphabet;
    for (char c : u_member) {
      if (alphabet.find(c) == std::string::npos) {
        alphabet += c;
      }
    }
    auto                  key = tau_key(u_member, tau);
    std::set<std::string> out;
    for (auto const& w : all_words(alphabet, member_len)) {
      if (tau_key(w, tau) != key) {
        continue;
      }
      for (std::size_t i = 0; i <= w.size(); ++i) {
        for (std::size_t j = i; j <= w.size(); ++j) {
          out.insert(dpm::to_string(dpm::canonical(to_word(w.substr(i, j - i)), tau)));
        }
      }
    }
    return out;
  }

  // Naive satisfaction: every assignment, no early exit. Returns all
  // violating assignments in lexicographic order (first letter most
  // significant, letters in order of first occurrence).
  inline std::vector<std::vector<dpm::Elem>> violations(dpm::FiniteMonoid const& m, dpm::Identity const& id) {
    auto                                  vars = dpm::letters(id);
    std::vector<std::vector<dpm::Elem>>   out;
    std::vector<dpm::Elem>                value(vars.size(), 0);
    auto eval = [&](dpm::Word const& w) {
      dpm::Elem acc = m.identity();
      for (auto l : w) {
        auto i = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), l.base) - vars.begin());
        acc    = m(acc, value[i]);
      }
      return acc;
    };
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == vars.size()) {
        if (eval(id.lhs) != eval(id.rhs)) {
          out.push_back(value);
        }
        return;
      }
      for (dpm::Elem e = 0; e < m.size(); ++e) {
        value[k] = e;
        go(k + 1);
      }
    };
    go(0);
    return out;
  }

}  // namespace oracle
