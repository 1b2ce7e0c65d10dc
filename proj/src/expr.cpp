#include "dpm/expr.hpp"

#include <map>
#include <mutex>

#include "dpm/dp_construct.hpp"
#include "dpm/presentation.hpp"
#include "dpm/tau.hpp"

namespace dpm {

  std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
      return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
  }

  std::vector<std::string> split_top_level(std::string_view text, char sep) {
    std::vector<std::string> out;
    int                      depth = 0;
    std::size_t              start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == '(' || c == '<' || c == '{') {
        ++depth;
      } else if (c == ')' || c == '>' || c == '}') {
        --depth;
      } else if (c == sep && depth == 0) {
        out.push_back(trim(text.substr(start, i - start)));
        start = i + 1;
      }
    }
    out.push_back(trim(text.substr(start)));
    return out;
  }

  namespace {
    std::string normalize(std::string_view text) {
      std::string out;
      for (char c : text) {
        if (c != ' ' && c != '\t') {
          out += c;
        }
      }
      return out;
    }

    FiniteMonoid presented(std::string_view arg) {
      auto p = arg.starts_with("<") ? parse_presentation(arg) : named_presentation(arg);
      return adjoin_identity(semigroup_from_presentation(p));
    }

    FiniteMonoid build(std::string const& text);

    FiniteMonoid call(std::string const& head, std::string const& body) {
      if (head == "M" || head.starts_with("M_")) {
        auto tau = head == "M" ? Tau::trivial : parse_tau(head.substr(2));
        std::vector<Word> words;
        if (!trim(body).empty()) {
          for (auto const& w : split_top_level(body, ',')) {
            words.push_back(parse_word(w));
          }
        }
        return build_monoid(TauWordSet(tau, words));
      }
      if (head == "pres") {
        return presented(trim(body));
      }
      if (head == "dual") {
        return dual(*eval_monoid(body));
      }
      if (head == "product") {
        auto args = split_top_level(body, ',');
        if (args.size() != 2) {
          throw ExprError("product takes two monoids");
        }
        return direct_product(*eval_monoid(args[0]), *eval_monoid(args[1]));
      }
      if (head == "sub") {
        auto parts = split_top_level(body, ';');
        if (parts.size() != 2) {
          throw ExprError("sub takes a monoid and a list of labels: sub(e; l1, l2)");
        }
        auto              m = eval_monoid(parts[0]);
        std::vector<Elem> gens;
        for (auto const& l : split_top_level(parts[1], ',')) {
          auto e = m->find_label(l);
          if (!e) {
            throw ExprError("no element labelled '" + l + "' in " + parts[0]);
          }
          gens.push_back(*e);
        }
        return submonoid(*m, gens).monoid;
      }
      if (head == "file") {
        return read_monoid_file(trim(body));
      }
      if (head == "Z") {
        return cyclic_group(std::stoul(trim(body)));
      }
      throw ExprError("unknown construction '" + head + "'");
    }

    FiniteMonoid build(std::string const& text) {
      auto open = text.find('(');
      if (open != std::string::npos && text.ends_with(")")) {
        return call(trim(std::string_view(text).substr(0, open)), text.substr(open + 1, text.size() - open - 2));
      }
      if (text == "trivial") {
        return trivial_monoid();
      }
      static std::map<std::string, std::string, std::less<>> const named{
          {"A1", "A"}, {"E1", "E"}, {"A01", "A0"}, {"S1", "S"}};
      if (auto it = named.find(text); it != named.end()) {
        return presented(it->second);
      }
      if (text == "Abar1") {
        return dual(presented("A"));
      }
      if (text.find('/') != std::string::npos || text.ends_with(".monoid")) {
        return read_monoid_file(text);
      }
      throw ExprError("unknown monoid expression '" + text + "'");
    }
  }  // namespace

  std::shared_ptr<FiniteMonoid const> eval_monoid(std::string_view expr) {
    static std::mutex                                                    mutex;
    static std::map<std::string, std::shared_ptr<FiniteMonoid const>> cache;
    auto                                                                 key = normalize(expr);
    if (key.find('/') != std::string::npos) {
      key = trim(expr);  // file paths keep their spaces
    }
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
      }
    }
    auto m = std::make_shared<FiniteMonoid const>(build(key));
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(m)).first->second;
  }

}  // namespace dpm
