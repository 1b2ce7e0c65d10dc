#include "dpm/presentation.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace dpm {

  namespace {
    std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(" \t\r\n");
      return std::string(s.substr(b, e - b + 1));
    }

    std::vector<std::string> split(std::string_view s, char sep) {
      std::vector<std::string> out;
      std::size_t              start = 0;
      while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
          return out;
        }
        start = pos + 1;
      }
    }
  }  // namespace

  Presentation parse_presentation(std::string_view text) {
    auto body = trim(text);
    if (!body.empty() && body.front() == '<') {
      if (body.back() != '>') {
        throw std::invalid_argument("presentation: missing '>'");
      }
      body = trim(std::string_view(body).substr(1, body.size() - 2));
    }
    auto bar = body.find('|');
    if (bar == std::string::npos) {
      throw std::invalid_argument("presentation: expected '<generators | relations>'");
    }
    Presentation p;
    for (auto const& g : split(std::string_view(body).substr(0, bar), ',')) {
      auto w = parse_word(g);
      if (w.size() != 1 || !w.is_plain()) {
        throw std::invalid_argument("presentation: bad generator '" + g + "'");
      }
      p.generators.push_back(w[0].base);
    }
    auto check_word = [&](Word const& w, std::string const& src) {
      for (auto l : w) {
        if (l.plussed
            || std::find(p.generators.begin(), p.generators.end(), l.base) == p.generators.end()) {
          throw std::invalid_argument("presentation: '" + src + "' uses a letter that is not a generator");
        }
      }
    };
    auto rels = trim(std::string_view(body).substr(bar + 1));
    if (rels.empty()) {
      return p;
    }
    for (auto const& chain : split(rels, ',')) {
      auto terms = split(chain, '=');
      if (terms.size() < 2) {
        throw std::invalid_argument("presentation: relation '" + chain + "' has no '='");
      }
      bool has_zero = std::find(terms.begin(), terms.end(), "0") != terms.end();
      std::vector<Word> words;
      for (auto const& t : terms) {
        if (t == "0") {
          continue;
        }
        auto w = parse_word(t);
        if (w.empty()) {
          throw std::invalid_argument("presentation: empty side in '" + chain + "'");
        }
        check_word(w, t);
        words.push_back(std::move(w));
      }
      if (has_zero) {
        for (auto& w : words) {
          p.zero_words.push_back(std::move(w));
        }
      } else {
        for (std::size_t i = 0; i + 1 < words.size(); ++i) {
          p.relations.emplace_back(words[i], words.back());
        }
      }
    }
    return p;
  }

  Presentation named_presentation(std::string_view name) {
    static std::map<std::string, std::string, std::less<>> const known{
        {"A", "<a,b,c | a^2=a, b^2=b, ab=ca=0, ac=cb=c>"},
        {"E", "<a,b,c | a^2=ab=0, ba=ca=a, b^2=bc=b, c^2=cb=c>"},
        {"A0", "<e,f | e^2=e, f^2=f, fe=0>"},
        {"S", "<a,b,c | a^2=a, b^2=b^3, abc=ac=ba=b^2c=0, bcb^2=bcb, ca=c>"},
    };
    auto it = known.find(name);
    if (it == known.end()) {
      throw std::invalid_argument("unknown presentation '" + std::string(name) + "'");
    }
    return parse_presentation(it->second);
  }

  std::vector<std::string> presentation_names() {
    return {"A", "E", "A0", "S"};
  }

  namespace {
    // Letters are 1..k in generator order; 0 is the zero symbol.
    using IWord = std::vector<int>;

    bool shortlex_less(IWord const& a, IWord const& b) {
      if (a.size() != b.size()) {
        return a.size() < b.size();
      }
      return a < b;
    }

    struct RewritingSystem {
      std::vector<std::pair<IWord, IWord>> rules;

      IWord normalize(IWord w) const {
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
            for (auto const& [lhs, rhs] : rules) {
              if (lhs.size() <= w.size() - pos
                  && std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(pos))) {
                IWord next(w.begin(), w.begin() + static_cast<long>(pos));
                next.insert(next.end(), rhs.begin(), rhs.end());
                next.insert(next.end(), w.begin() + static_cast<long>(pos + lhs.size()), w.end());
                w       = std::move(next);
                changed = true;
                break;
              }
            }
          }
        }
        return w;
      }

      // Returns true if a new rule was added.
      bool add(IWord a, IWord b) {
        a = normalize(std::move(a));
        b = normalize(std::move(b));
        if (a == b) {
          return false;
        }
        if (shortlex_less(a, b)) {
          std::swap(a, b);
        }
        rules.emplace_back(std::move(a), std::move(b));
        return true;
      }
    };

    constexpr std::size_t kMaxRules = 2000;

    // Knuth-Bendix completion with respect to shortlex; terminates on the
    // small presentations used here, otherwise stops at kMaxRules.
    void complete(RewritingSystem& rs) {
      bool added = true;
      while (added) {
        added = false;
        for (std::size_t i = 0; i < rs.rules.size(); ++i) {
          for (std::size_t j = 0; j < rs.rules.size(); ++j) {
            auto const l1 = rs.rules[i].first, r1 = rs.rules[i].second;
            auto const l2 = rs.rules[j].first, r2 = rs.rules[j].second;
            // suffix of l1 overlaps prefix of l2
            for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
              if (std::equal(l1.end() - static_cast<long>(k), l1.end(), l2.begin())) {
                IWord a = r1;
                a.insert(a.end(), l2.begin() + static_cast<long>(k), l2.end());
                IWord b(l1.begin(), l1.end() - static_cast<long>(k));
                b.insert(b.end(), r2.begin(), r2.end());
                added |= rs.add(std::move(a), std::move(b));
              }
            }
            // l2 inside l1
            if (i != j && l2.size() <= l1.size()) {
              for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
                if (std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(p))) {
                  IWord b(l1.begin(), l1.begin() + static_cast<long>(p));
                  b.insert(b.end(), r2.begin(), r2.end());
                  b.insert(b.end(), l1.begin() + static_cast<long>(p + l2.size()), l1.end());
                  added |= rs.add(r1, std::move(b));
                }
              }
            }
            if (rs.rules.size() > kMaxRules) {
              throw MonoidError("non-confluent orientation: completion exceeded "
                                + std::to_string(kMaxRules) + " rules");
            }
          }
        }
      }
    }

    struct Closure {
      std::vector<IWord>  elements;  // sorted: identity (if any), shortlex, zero last
      std::optional<Elem> zero;
      std::vector<Elem>   table;
      std::vector<std::string> labels;
    };

    Closure close(Presentation const& p, bool with_identity, std::size_t cap) {
      std::map<Symbol, int> letter;
      for (std::size_t i = 0; i < p.generators.size(); ++i) {
        letter[p.generators[i]] = static_cast<int>(i) + 1;
      }
      auto to_iword = [&](Word const& w) {
        IWord out;
        for (auto l : w) {
          out.push_back(letter.at(l.base));
        }
        return out;
      };
      RewritingSystem rs;
      bool            has_zero = !p.zero_words.empty();
      if (has_zero) {
        for (int g = 1; g <= static_cast<int>(p.generators.size()); ++g) {
          rs.add({0, g}, {0});
          rs.add({g, 0}, {0});
        }
        rs.add({0, 0}, {0});
      }
      for (auto const& z : p.zero_words) {
        rs.add(to_iword(z), {0});
      }
      for (auto const& [u, v] : p.relations) {
        rs.add(to_iword(u), to_iword(v));
      }
      complete(rs);

      std::vector<IWord>                  found;
      std::map<IWord, std::size_t>        seen;
      auto visit = [&](IWord w) {
        w = rs.normalize(std::move(w));
        if (seen.emplace(w, found.size()).second) {
          found.push_back(w);
          if (found.size() > cap) {
            throw MonoidError("not closed within cap " + std::to_string(cap));
          }
        }
      };
      if (with_identity) {
        visit({});
      }
      for (int g = 1; g <= static_cast<int>(p.generators.size()); ++g) {
        visit({g});
      }
      for (std::size_t i = 0; i < found.size(); ++i) {
        for (int g = 1; g <= static_cast<int>(p.generators.size()); ++g) {
          IWord w = found[i];
          w.push_back(g);
          visit(std::move(w));
        }
      }
      std::sort(found.begin(), found.end(), [](IWord const& a, IWord const& b) {
        bool za = a == IWord{0}, zb = b == IWord{0};
        if (za != zb) {
          return zb;
        }
        return shortlex_less(a, b);
      });
      Closure c;
      c.elements = found;
      std::map<IWord, Elem> index;
      for (std::size_t i = 0; i < found.size(); ++i) {
        index[found[i]] = static_cast<Elem>(i);
        if (found[i] == IWord{0}) {
          c.zero = static_cast<Elem>(i);
          c.labels.push_back("0");
        } else if (found[i].empty()) {
          c.labels.push_back("1");
        } else {
          Word w;
          for (int l : found[i]) {
            w += Letter::plain(p.generators[static_cast<std::size_t>(l - 1)]);
          }
          auto s = to_string(w);
          std::replace(s.begin(), s.end(), ' ', '.');
          c.labels.push_back(s);
        }
      }
      std::size_t n = found.size();
      c.table.resize(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          IWord w = found[a];
          w.insert(w.end(), found[b].begin(), found[b].end());
          auto it = index.find(rs.normalize(std::move(w)));
          if (it == index.end()) {
            throw MonoidError("non-confluent orientation: product leaves the closure");
          }
          c.table[a * n + b] = it->second;
        }
      }

      // Every relation, zero word and element label must evaluate correctly.
      std::vector<Elem> gen_elem;
      for (int g = 1; g <= static_cast<int>(p.generators.size()); ++g) {
        gen_elem.push_back(index.at(rs.normalize({g})));
      }
      auto eval = [&](IWord const& w) -> std::optional<Elem> {
        if (w.empty()) {
          if (!with_identity) {
            return std::nullopt;
          }
          return index.at({});
        }
        Elem acc = w[0] == 0 ? *c.zero : gen_elem[static_cast<std::size_t>(w[0] - 1)];
        for (std::size_t i = 1; i < w.size(); ++i) {
          Elem x = w[i] == 0 ? *c.zero : gen_elem[static_cast<std::size_t>(w[i] - 1)];
          acc    = c.table[acc * n + x];
        }
        return acc;
      };
      auto violated = [](std::string const& what) {
        return MonoidError("non-confluent orientation: produced table violates " + what);
      };
      for (auto const& [u, v] : p.relations) {
        if (eval(to_iword(u)) != eval(to_iword(v))) {
          throw violated(to_string(u) + "=" + to_string(v));
        }
      }
      for (auto const& z : p.zero_words) {
        if (eval(to_iword(z)) != c.zero) {
          throw violated(to_string(z) + "=0");
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!found[i].empty() && eval(found[i]) != static_cast<Elem>(i)) {
          throw violated("element " + c.labels[i]);
        }
      }
      return c;
    }
  }  // namespace

  FiniteMonoid from_presentation(Presentation const& p, std::size_t cap) {
    auto c = close(p, true, cap);
    // The empty word is the shortlex-least element, so index 0.
    return FiniteMonoid(c.elements.size(), 0, c.zero, std::move(c.table), std::move(c.labels));
  }

  FiniteSemigroup semigroup_from_presentation(Presentation const& p, std::size_t cap) {
    auto c = close(p, false, cap);
    // Associativity of the semigroup table is checked through the monoid
    // obtained by adjoining an identity.
    FiniteSemigroup s{c.elements.size(), std::move(c.table), std::move(c.labels), c.zero};
    (void) adjoin_identity(s);
    return s;
  }

}  // namespace dpm
