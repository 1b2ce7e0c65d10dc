#include "dpm/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace dpm {

  bool is_isomorphism(FiniteMonoid const& m, FiniteMonoid const& n, MonoidMap const& map) {
    if (m.size() != n.size() || map.size() != m.size()) {
      return false;
    }
    std::vector<bool> hit(n.size(), false);
    for (auto x : map) {
      if (x >= n.size() || hit[x]) {
        return false;
      }
      hit[x] = true;
    }
    if (map[m.identity()] != n.identity()) {
      return false;
    }
    if (m.zero() && n.zero() && map[*m.zero()] != *n.zero()) {
      return false;
    }
    for (Elem a = 0; a < m.size(); ++a) {
      for (Elem b = 0; b < m.size(); ++b) {
        if (map[m(a, b)] != n(map[a], map[b])) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<MonoidMap> extend_generator_map(FiniteMonoid const&   m,
                                                FiniteMonoid const&   n,
                                                std::span<Elem const> gens,
                                                std::span<Elem const> images) {
    auto const unset = static_cast<Elem>(n.size());
    MonoidMap  map(m.size(), unset);
    map[m.identity()] = n.identity();
    std::vector<Elem> queue{m.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Elem e = queue[i];
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Elem p   = m(e, gens[g]);
        Elem img = n(map[e], images[g]);
        if (map[p] == unset) {
          map[p] = img;
          queue.push_back(p);
        } else if (map[p] != img) {
          return std::nullopt;
        }
      }
    }
    return map;
  }

  namespace {
    using Profile = std::array<std::size_t, 9>;

    std::vector<std::size_t> ideal_sizes(FiniteMonoid const& m) {
      std::vector<std::size_t> out(m.size());
      for (Elem a = 0; a < m.size(); ++a) {
        std::vector<bool> right(m.size(), false), ideal(m.size(), false);
        for (Elem y = 0; y < m.size(); ++y) {
          right[m(a, y)] = true;
        }
        for (Elem r = 0; r < m.size(); ++r) {
          if (right[r]) {
            for (Elem x = 0; x < m.size(); ++x) {
              ideal[m(x, r)] = true;
            }
          }
        }
        out[a] = static_cast<std::size_t>(std::count(ideal.begin(), ideal.end(), true));
      }
      return out;
    }

    // Two-sided absorbing element, whether or not the table declares one.
    std::optional<Elem> intrinsic_zero(FiniteMonoid const& m) {
      for (Elem z = 0; z < m.size(); ++z) {
        bool absorbing = true;
        for (Elem x = 0; x < m.size() && absorbing; ++x) {
          absorbing = m(z, x) == z && m(x, z) == z;
        }
        if (absorbing) {
          return z;
        }
      }
      return std::nullopt;
    }

    std::vector<Profile> profiles(FiniteMonoid const& m) {
      auto                 ideals = ideal_sizes(m);
      auto                 zero   = intrinsic_zero(m);
      std::vector<Profile> out(m.size());
      for (Elem x = 0; x < m.size(); ++x) {
        Profile p{};
        p[0] = m(x, x) == x;
        // index of the power sequence: first k with x^k repeated later
        std::vector<Elem> powers{x};
        while (true) {
          Elem next = m(powers.back(), x);
          auto it   = std::find(powers.begin(), powers.end(), next);
          if (it != powers.end()) {
            p[1] = static_cast<std::size_t>(it - powers.begin());
            p[2] = powers.size() - p[1];
            break;
          }
          powers.push_back(next);
        }
        for (Elem y = 0; y < m.size(); ++y) {
          p[3] += m(x, y) == x;
          p[4] += m(y, x) == x;
          p[5] += zero && m(x, y) == *zero;
          p[6] += zero && m(y, x) == *zero;
        }
        p[7] = ideals[x];
        p[8] = (x == m.identity() ? 1 : 0) + (zero && x == *zero ? 2 : 0);
        out[x] = p;
      }
      return out;
    }
  }  // namespace

  std::vector<Elem> generating_set(FiniteMonoid const& m) {
    auto              ideals = ideal_sizes(m);
    std::vector<Elem> order(m.size());
    std::iota(order.begin(), order.end(), Elem{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Elem a, Elem b) { return ideals[a] > ideals[b]; });
    std::vector<Elem> gens;
    std::vector<bool> covered(m.size(), false);
    covered[m.identity()] = true;
    for (auto x : order) {
      if (covered[x]) {
        continue;
      }
      gens.push_back(x);
      auto sub = submonoid(m, gens);
      std::fill(covered.begin(), covered.end(), false);
      for (auto e : sub.embedding) {
        covered[e] = true;
      }
    }
    return gens;
  }

  namespace {
    struct Search {
      FiniteMonoid const&            m;
      FiniteMonoid const&            n;
      std::vector<Elem>              gens;
      std::vector<std::vector<Elem>> candidates;
      std::vector<Profile>           pm, pn;
      std::vector<Elem>              images;

      bool partial_ok() const {
        auto map = extend_generator_map(m, n, std::span(gens).first(images.size()), images);
        if (!map) {
          return false;
        }
        std::vector<bool> hit(n.size(), false);
        for (Elem a = 0; a < m.size(); ++a) {
          Elem img = (*map)[a];
          if (img == n.size()) {
            continue;
          }
          if (hit[img] || pm[a] != pn[img]) {
            return false;
          }
          hit[img] = true;
        }
        return true;
      }

      std::optional<MonoidMap> run() {
        if (images.size() == gens.size()) {
          auto map = extend_generator_map(m, n, gens, images);
          if (map && is_isomorphism(m, n, *map)) {
            return map;
          }
          return std::nullopt;
        }
        for (auto c : candidates[images.size()]) {
          images.push_back(c);
          if (partial_ok()) {
            if (auto found = run()) {
              return found;
            }
          }
          images.pop_back();
        }
        return std::nullopt;
      }
    };
  }  // namespace

  std::optional<MonoidMap> find_isomorphism(FiniteMonoid const& m, FiniteMonoid const& n) {
    if (m.size() != n.size()) {
      return std::nullopt;
    }
    Search s{m, n, generating_set(m), {}, profiles(m), profiles(n), {}};
    auto   sorted_m = s.pm, sorted_n = s.pn;
    std::sort(sorted_m.begin(), sorted_m.end());
    std::sort(sorted_n.begin(), sorted_n.end());
    if (sorted_m != sorted_n) {
      return std::nullopt;
    }
    for (auto g : s.gens) {
      std::vector<Elem> cand;
      for (Elem y = 0; y < n.size(); ++y) {
        if (s.pn[y] == s.pm[g]) {
          cand.push_back(y);
        }
      }
      s.candidates.push_back(std::move(cand));
    }
    return s.run();
  }

}  // namespace dpm
