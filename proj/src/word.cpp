#include "dpm/word.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace dpm {

  namespace {
    struct SymbolTable {
      std::shared_mutex                            mutex;
      std::deque<std::string>                      names;
      std::unordered_map<std::string, std::uint32_t> ids;
    };

    SymbolTable& symbol_table() {
      static SymbolTable table;
      return table;
    }
  }  // namespace

  Symbol Symbol::intern(std::string_view name) {
    auto& table = symbol_table();
    {
      std::shared_lock lock(table.mutex);
      auto             it = table.ids.find(std::string(name));
      if (it != table.ids.end()) {
        return Symbol(it->second);
      }
    }
    std::unique_lock lock(table.mutex);
    auto [it, inserted] = table.ids.try_emplace(
        std::string(name), static_cast<std::uint32_t>(table.names.size()));
    if (inserted) {
      table.names.emplace_back(name);
    }
    return Symbol(it->second);
  }

  std::string const& Symbol::name() const {
    auto&            table = symbol_table();
    std::shared_lock lock(table.mutex);
    return table.names.at(id_);
  }

  Word& Word::operator+=(Word const& other) {
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
    return *this;
  }

  Word Word::reversed() const {
    return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
  }

  bool Word::is_plain() const noexcept {
    return std::none_of(letters_.begin(), letters_.end(), [](Letter l) { return l.plussed; });
  }

  bool display_less(Word const& a, Word const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return to_string(a) < to_string(b);
  }

  ParseError::ParseError(std::string const& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  namespace {
    class WordParser {
     public:
      explicit WordParser(std::string_view text)
          : text_(text),
            multi_(interior_space(text)) {}

      Word parse() {
        Word w = sequence();
        skip_ws();
        if (pos_ != text_.size()) {
          fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return w;
      }

     private:
      static bool interior_space(std::string_view t) {
        auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        auto first    = std::find_if_not(t.begin(), t.end(), is_space);
        auto last     = std::find_if_not(t.rbegin(), t.rend(), is_space).base();
        return first < last && std::any_of(first, last, is_space);
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, pos_);
      }

      void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool at(char c) const {
        return pos_ < text_.size() && text_[pos_] == c;
      }

      std::size_t exponent() {
        if (!at('^')) {
          return 1;
        }
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (start == pos_) {
          fail("malformed exponent");
        }
        if (pos_ - start > 6) {
          pos_ = start;
          fail("exponent too large");
        }
        auto k = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (k == 0) {
          pos_ = start;
          fail("zero exponent");
        }
        return k;
      }

      static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
      }
      static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
      }

      // Standalone "1": the empty word.
      bool empty_token() const {
        if (!at('1')) {
          return false;
        }
        std::size_t next = pos_ + 1;
        if (!multi_) {
          return next >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[next]));
        }
        return next >= text_.size() || !ident_char(text_[next]);
      }

      Word sequence() {
        Word w;
        while (true) {
          skip_ws();
          if (pos_ >= text_.size() || at(')')) {
            return w;
          }
          if (at('(')) {
            ++pos_;
            Word inner = sequence();
            skip_ws();
            if (!at(')')) {
              fail("missing ')'");
            }
            ++pos_;
            auto k = exponent();
            for (std::size_t i = 0; i < k; ++i) {
              w += inner;
            }
          } else if (empty_token()) {
            ++pos_;
            exponent();
          } else if (ident_start(text_[pos_])) {
            std::size_t start = pos_++;
            if (multi_) {
              while (pos_ < text_.size() && ident_char(text_[pos_])) {
                ++pos_;
              }
            }
            Letter l{Symbol::intern(text_.substr(start, pos_ - start)), false};
            if (at('+')) {
              l.plussed = true;
              ++pos_;
            }
            auto k = exponent();
            for (std::size_t i = 0; i < k; ++i) {
              w += l;
            }
          } else {
            fail(std::string("unexpected character '") + text_[pos_] + "'");
          }
        }
      }

      std::string_view text_;
      bool             multi_;
      std::size_t      pos_ = 0;
    };
  }  // namespace

  Word parse_word(std::string_view text) {
    return WordParser(text).parse();
  }

  std::string to_string(Letter l) {
    return l.plussed ? l.base.name() + "+" : l.base.name();
  }

  std::string to_string(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    bool compact = std::all_of(w.begin(), w.end(), [](Letter l) { return l.base.name().size() == 1; });
    std::string out;
    for (auto l : w) {
      if (!compact && !out.empty()) {
        out += ' ';
      }
      out += to_string(l);
    }
    return out;
  }

  std::string to_string(SymbolSet const& s) {
    std::string out = "{";
    for (auto x : s) {
      if (out.size() > 1) {
        out += ",";
      }
      out += x.name();
    }
    return out + "}";
  }

  SymbolSet content(Word const& w) {
    SymbolSet out;
    for (auto l : w) {
      out.insert(l.base);
    }
    return out;
  }

  std::pair<SymbolSet, SymbolSet> simple_and_multiple(Word const& w) {
    if (!w.is_plain()) {
      throw std::invalid_argument("simple_and_multiple: word contains plussed letters: " + to_string(w));
    }
    std::map<Symbol, std::size_t> count;
    for (auto l : w) {
      ++count[l.base];
    }
    SymbolSet simple, multiple;
    for (auto [x, n] : count) {
      (n == 1 ? simple : multiple).insert(x);
    }
    return {simple, multiple};
  }

  std::size_t occurrences(Word const& w, Symbol x) {
    return static_cast<std::size_t>(
        std::count_if(w.begin(), w.end(), [x](Letter l) { return l.base == x; }));
  }

  std::size_t islands(Word const& w, Symbol x) {
    std::size_t n    = 0;
    bool        prev = false;
    for (auto l : w) {
      bool here = l.base == x;
      if (here && !prev) {
        ++n;
      }
      prev = here;
    }
    return n;
  }

  bool is_two_island_limited(Word const& w) {
    for (auto x : content(w)) {
      if (islands(w, x) > 2) {
        return false;
      }
    }
    return true;
  }

  Word strip_marks(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto l : w) {
      out.push_back(Letter::plain(l.base));
    }
    return Word(std::move(out));
  }

}  // namespace dpm
