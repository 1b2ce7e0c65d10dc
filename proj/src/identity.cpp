#include "dpm/identity.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace dpm {

  namespace {
    std::string normalize_approx(std::string_view text) {
      std::string       s(text);
      std::string const approx = "\xe2\x89\x88";
      for (auto pos = s.find(approx); pos != std::string::npos; pos = s.find(approx)) {
        s.replace(pos, approx.size(), "=");
      }
      return s;
    }

    Word plain_side(std::string_view text) {
      auto w = parse_word(text);
      if (!w.is_plain()) {
        throw std::invalid_argument("identity sides must be plain words: '" + std::string(text) + "'");
      }
      return w;
    }
  }  // namespace

  std::vector<Identity> parse_identity_chain(std::string_view text) {
    auto                  s = normalize_approx(text);
    std::vector<Word>     terms;
    std::size_t           start = 0;
    while (true) {
      auto pos = s.find('=', start);
      terms.push_back(plain_side(std::string_view(s).substr(start, pos == std::string::npos ? pos : pos - start)));
      if (pos == std::string::npos) {
        break;
      }
      start = pos + 1;
    }
    if (terms.size() < 2) {
      throw std::invalid_argument("identity '" + s + "' has no '='");
    }
    std::vector<Identity> out;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
      out.push_back({terms[i], terms[i + 1]});
    }
    return out;
  }

  Identity parse_identity(std::string_view text) {
    auto chain = parse_identity_chain(text);
    if (chain.size() != 1) {
      throw std::invalid_argument("expected a single identity, got a chain: '" + std::string(text) + "'");
    }
    return chain.front();
  }

  std::vector<Identity> parse_identity_lines(std::string_view text) {
    std::vector<Identity> out;
    std::istringstream    in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      auto chain = parse_identity_chain(line);
      out.insert(out.end(), chain.begin(), chain.end());
    }
    return out;
  }

  std::string to_string(Identity const& id) {
    return to_string(id.lhs) + " = " + to_string(id.rhs);
  }

  std::vector<Symbol> letters(Identity const& id) {
    std::vector<Symbol> out;
    for (auto const* w : {&id.lhs, &id.rhs}) {
      for (auto l : *w) {
        if (std::find(out.begin(), out.end(), l.base) == out.end()) {
          out.push_back(l.base);
        }
      }
    }
    return out;
  }

  Identity long_identity(unsigned n) {
    if (n == 0) {
      throw std::invalid_argument("long_identity: n must be at least 1");
    }
    auto x = Letter::plain(Symbol::intern("x"));
    Word u{x}, v{x};
    for (unsigned i = 1; i <= n; ++i) {
      auto y = Letter::plain(Symbol::intern("y" + std::to_string(i)));
      u += y;
      u += y;
      if (i < n) {
        v += y;
        v += y;
      } else {
        v += y;
        v += x;
        v += y;
      }
    }
    u += x;
    return {u, v};
  }

  std::optional<Elem> Substitution::operator[](Symbol x) const {
    for (auto const& [s, e] : values) {
      if (s == x) {
        return e;
      }
    }
    return std::nullopt;
  }

  std::string to_string(Substitution const& s, FiniteMonoid const& m) {
    std::string out;
    for (auto const& [x, e] : s.values) {
      if (!out.empty()) {
        out += ",";
      }
      out += x.name() + "=" + m.label(e);
    }
    return out;
  }

  Elem evaluate(FiniteMonoid const& m, Word const& w, Substitution const& s) {
    Elem acc = m.identity();
    for (auto l : w) {
      auto v = s[l.base];
      if (!v) {
        throw std::invalid_argument("evaluate: letter " + l.base.name() + " is not assigned");
      }
      acc = m(acc, *v);
    }
    return acc;
  }

  std::uint64_t satisfaction_cost(FiniteMonoid const& m, Identity const& id) {
    std::uint64_t cost = 1;
    for (std::size_t i = 0; i < letters(id).size(); ++i) {
      if (cost > std::numeric_limits<std::uint64_t>::max() / m.size()) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      cost *= m.size();
    }
    return cost;
  }

  namespace {
    struct Compiled {
      std::vector<Symbol>      letters;
      std::vector<std::size_t> lhs, rhs;  // slots into the value vector
    };

    Compiled compile(Identity const& id) {
      Compiled c{letters(id), {}, {}};
      auto slot = [&](Symbol x) {
        return static_cast<std::size_t>(std::find(c.letters.begin(), c.letters.end(), x) - c.letters.begin());
      };
      for (auto l : id.lhs) {
        c.lhs.push_back(slot(l.base));
      }
      for (auto l : id.rhs) {
        c.rhs.push_back(slot(l.base));
      }
      return c;
    }

    struct Hit {
      std::uint64_t index;
      Elem          lhs, rhs;
    };

    // Scans substitution indices [lo, hi); index digits are the values of
    // the letters, first letter most significant.
    template <typename Pred>
    std::optional<Hit> scan(FiniteMonoid const&        m,
                            Compiled const&            c,
                            std::uint64_t              lo,
                            std::uint64_t              hi,
                            Pred const&                pred,
                            std::atomic<std::uint64_t> const* cutoff) {
      auto const        n = static_cast<Elem>(m.size());
      auto const        k = c.letters.size();
      std::vector<Elem> value(k, 0);
      {
        auto rest = lo;
        for (std::size_t i = k; i-- > 0;) {
          value[i] = static_cast<Elem>(rest % n);
          rest /= n;
        }
      }
      auto const* table = m.table().data();
      auto        eval  = [&](std::vector<std::size_t> const& slots) {
        Elem acc = m.identity();
        for (auto s : slots) {
          acc = table[acc * n + value[s]];
        }
        return acc;
      };
      for (auto idx = lo; idx < hi; ++idx) {
        if (cutoff && ((idx - lo) & 0xffff) == 0 && cutoff->load(std::memory_order_relaxed) < lo) {
          return std::nullopt;
        }
        Elem a = eval(c.lhs), b = eval(c.rhs);
        if (pred(a, b)) {
          return Hit{idx, a, b};
        }
        for (std::size_t i = k; i-- > 0;) {
          if (++value[i] < n) {
            break;
          }
          value[i] = 0;
        }
      }
      return std::nullopt;
    }

    template <typename Pred>
    std::optional<Hit> search(FiniteMonoid const&        m,
                              Compiled const&            c,
                              std::uint64_t              total,
                              Pred const&                pred,
                              unsigned                   threads) {
      if (threads <= 1 || total < (1u << 16)) {
        return scan(m, c, 0, total, pred, nullptr);
      }
      std::uint64_t const        chunks     = std::uint64_t{threads} * 16;
      std::uint64_t const        chunk_size = (total + chunks - 1) / chunks;
      std::atomic<std::uint64_t> next_chunk{0};
      std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
      std::mutex                 mutex;
      std::optional<Hit>         best_hit;
      auto                       worker = [&] {
        while (true) {
          auto chunk = next_chunk.fetch_add(1);
          auto lo    = chunk * chunk_size;
          if (lo >= total || lo > best.load()) {
            return;
          }
          auto hi  = std::min(total, lo + chunk_size);
          auto hit = scan(m, c, lo, hi, pred, &best);
          if (hit) {
            std::lock_guard lock(mutex);
            if (!best_hit || hit->index < best_hit->index) {
              best_hit = hit;
              best.store(hit->index);
            }
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
      return best_hit;
    }

    Substitution decode(FiniteMonoid const& m, Compiled const& c, std::uint64_t index) {
      Substitution s;
      s.values.resize(c.letters.size());
      for (std::size_t i = c.letters.size(); i-- > 0;) {
        s.values[i] = {c.letters[i], static_cast<Elem>(index % m.size())};
        index /= m.size();
      }
      return s;
    }

    std::uint64_t checked_cost(FiniteMonoid const& m, Identity const& id, SatisfactionOptions const& opts) {
      auto cost = satisfaction_cost(m, id);
      if (cost > opts.budget) {
        throw BudgetExceeded("identity " + to_string(id) + " needs " + std::to_string(cost)
                             + " substitutions over " + std::to_string(m.size())
                             + " elements; budget is " + std::to_string(opts.budget));
      }
      return cost;
    }
  }  // namespace

  SatisfactionResult satisfies(FiniteMonoid const& m, Identity const& id, SatisfactionOptions const& opts) {
    auto               total = checked_cost(m, id, opts);
    auto               c     = compile(id);
    SatisfactionResult r;
    r.substitutions = total;
    r.parallel      = opts.threads > 1;
    auto hit        = search(m, c, total, [](Elem a, Elem b) { return a != b; }, opts.threads);
    if (hit) {
      r.holds     = false;
      r.witness   = decode(m, c, hit->index);
      r.lhs_value = hit->lhs;
      r.rhs_value = hit->rhs;
    }
    return r;
  }

  std::vector<SatisfactionResult> satisfies_all(FiniteMonoid const&          m,
                                                std::vector<Identity> const& ids,
                                                SatisfactionOptions const&   opts) {
    std::vector<SatisfactionResult> out;
    out.reserve(ids.size());
    for (auto const& id : ids) {
      out.push_back(satisfies(m, id, opts));
    }
    return out;
  }

  std::optional<Substitution> find_substitution_with_values(FiniteMonoid const&        m,
                                                            Identity const&            id,
                                                            Elem                       lhs_value,
                                                            Elem                       rhs_value,
                                                            SatisfactionOptions const& opts) {
    auto total = checked_cost(m, id, opts);
    auto c     = compile(id);
    auto hit   = search(
        m, c, total, [&](Elem a, Elem b) { return a == lhs_value && b == rhs_value; }, opts.threads);
    if (!hit) {
      return std::nullopt;
    }
    return decode(m, c, hit->index);
  }

}  // namespace dpm
