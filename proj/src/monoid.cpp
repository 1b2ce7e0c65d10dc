#include "dpm/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

namespace dpm {

  namespace {
    void check_associative(FiniteMonoid const& m) {
      auto n   = static_cast<Elem>(m.size());
      auto bad = [&](Elem a, Elem b, Elem c) {
        return m(m(a, b), c) != m(a, m(b, c));
      };
      auto fail = [](Elem a, Elem b, Elem c) {
        throw MonoidError("table is not associative at (" + std::to_string(a) + ","
                          + std::to_string(b) + "," + std::to_string(c) + ")");
      };
      if (n <= 64) {
        for (Elem a = 0; a < n; ++a) {
          for (Elem b = 0; b < n; ++b) {
            for (Elem c = 0; c < n; ++c) {
              if (bad(a, b, c)) {
                fail(a, b, c);
              }
            }
          }
        }
        return;
      }
      std::mt19937_64                      rng(0x5eed);
      std::uniform_int_distribution<Elem>  pick(0, n - 1);
      for (int i = 0; i < 200000; ++i) {
        Elem a = pick(rng), b = pick(rng), c = pick(rng);
        if (bad(a, b, c)) {
          fail(a, b, c);
        }
      }
    }
  }  // namespace

  FiniteMonoid::FiniteMonoid(std::size_t              size,
                             Elem                     identity,
                             std::optional<Elem>      zero,
                             std::vector<Elem>        table,
                             std::vector<std::string> labels)
      : size_(size),
        identity_(identity),
        zero_(zero),
        table_(std::move(table)),
        labels_(std::move(labels)) {
    if (size_ == 0) {
      throw MonoidError("a monoid has at least one element");
    }
    if (table_.size() != size_ * size_) {
      throw MonoidError("table has " + std::to_string(table_.size()) + " entries, expected "
                        + std::to_string(size_ * size_));
    }
    if (labels_.size() != size_) {
      throw MonoidError("expected " + std::to_string(size_) + " labels, got "
                        + std::to_string(labels_.size()));
    }
    for (auto const& l : labels_) {
      if (l.empty() || std::any_of(l.begin(), l.end(), [](unsigned char c) { return std::isspace(c); })) {
        throw MonoidError("labels must be non-empty and contain no whitespace: '" + l + "'");
      }
    }
    if (identity_ >= size_ || (zero_ && *zero_ >= size_)) {
      throw MonoidError("identity or zero index out of range");
    }
    for (auto e : table_) {
      if (e >= size_) {
        throw MonoidError("table entry " + std::to_string(e) + " out of range");
      }
    }
    auto n = static_cast<Elem>(size_);
    for (Elem a = 0; a < n; ++a) {
      if ((*this)(identity_, a) != a || (*this)(a, identity_) != a) {
        throw MonoidError("identity law fails at element " + std::to_string(a));
      }
      if (zero_ && ((*this)(*zero_, a) != *zero_ || (*this)(a, *zero_) != *zero_)) {
        throw MonoidError("zero is not absorbing at element " + std::to_string(a));
      }
    }
    check_associative(*this);
  }

  std::optional<Elem> FiniteMonoid::find_label(std::string const& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
      return std::nullopt;
    }
    return static_cast<Elem>(it - labels_.begin());
  }

  FiniteMonoid trivial_monoid() {
    return FiniteMonoid(1, 0, Elem{0}, {0}, {"1"});
  }

  FiniteMonoid cyclic_group(std::size_t n) {
    if (n == 0) {
      throw MonoidError("cyclic group of order 0");
    }
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(i == 0 ? "1" : "g^" + std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) {
        table[i * n + j] = static_cast<Elem>((i + j) % n);
      }
    }
    std::optional<Elem> zero;
    if (n == 1) {
      zero = 0;
    }
    return FiniteMonoid(n, 0, zero, std::move(table), std::move(labels));
  }

  namespace {
    std::string fresh_identity_label(std::vector<std::string> const& labels) {
      std::string l = "1";
      while (std::find(labels.begin(), labels.end(), l) != labels.end()) {
        l += "'";
      }
      return l;
    }
  }  // namespace

  FiniteMonoid adjoin_identity(FiniteSemigroup const& s) {
    std::size_t              n = s.size + 1;
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels{fresh_identity_label(s.labels)};
    labels.insert(labels.end(), s.labels.begin(), s.labels.end());
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        Elem r;
        if (a == 0) {
          r = b;
        } else if (b == 0) {
          r = a;
        } else {
          r = s(a - 1, b - 1) + 1;
        }
        table[a * n + b] = r;
      }
    }
    std::optional<Elem> zero;
    if (s.zero) {
      zero = *s.zero + 1;
    }
    return FiniteMonoid(n, 0, zero, std::move(table), std::move(labels));
  }

  FiniteMonoid adjoin_identity(FiniteMonoid const& m) {
    FiniteSemigroup s{m.size(), {m.table().begin(), m.table().end()}, m.labels(), m.zero()};
    return adjoin_identity(s);
  }

  JTrivialResult is_j_trivial(FiniteMonoid const& m) {
    auto                           n = static_cast<Elem>(m.size());
    std::vector<std::vector<bool>> ideal(n, std::vector<bool>(n, false));
    for (Elem a = 0; a < n; ++a) {
      std::vector<bool> right(n, false);
      for (Elem y = 0; y < n; ++y) {
        right[m(a, y)] = true;
      }
      for (Elem r = 0; r < n; ++r) {
        if (!right[r]) {
          continue;
        }
        for (Elem x = 0; x < n; ++x) {
          ideal[a][m(x, r)] = true;
        }
      }
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (ideal[a] == ideal[b]) {
          return {false, std::pair{a, b}};
        }
      }
    }
    return {true, std::nullopt};
  }

  bool is_aperiodic(FiniteMonoid const& m) {
    auto n = static_cast<Elem>(m.size());
    for (Elem x = 0; x < n; ++x) {
      Elem power = x;  // x^k
      bool found = false;
      for (std::size_t k = 1; k <= m.size(); ++k) {
        Elem next = m(power, x);
        if (next == power) {
          found = true;
          break;
        }
        power = next;
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  std::vector<Elem> idempotents(FiniteMonoid const& m) {
    std::vector<Elem> out;
    for (Elem e = 0; e < m.size(); ++e) {
      if (m(e, e) == e) {
        out.push_back(e);
      }
    }
    return out;
  }

  bool idempotents_commute(FiniteMonoid const& m) {
    auto idem = idempotents(m);
    for (auto e : idem) {
      for (auto f : idem) {
        if (m(e, f) != m(f, e)) {
          return false;
        }
      }
    }
    return true;
  }

  Submonoid submonoid(FiniteMonoid const& m, std::span<Elem const> gens) {
    for (auto g : gens) {
      if (g >= m.size()) {
        throw MonoidError("generator index " + std::to_string(g) + " out of range");
      }
    }
    std::vector<Elem> elems{m.identity()};
    std::vector<long> index(m.size(), -1);
    index[m.identity()] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (auto g : gens) {
        Elem p = m(elems[i], g);
        if (index[p] < 0) {
          index[p] = static_cast<long>(elems.size());
          elems.push_back(p);
        }
      }
    }
    std::size_t              n = elems.size();
    std::vector<Elem>        table(n * n);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      labels.push_back(m.label(elems[a]));
      for (std::size_t b = 0; b < n; ++b) {
        auto p = index[m(elems[a], elems[b])];
        // Closed: products of products of generators stay in the closure.
        table[a * n + b] = static_cast<Elem>(p);
      }
    }
    std::optional<Elem> zero;
    if (m.zero() && index[*m.zero()] >= 0) {
      zero = static_cast<Elem>(index[*m.zero()]);
    }
    return {FiniteMonoid(n, 0, zero, std::move(table), std::move(labels)), std::move(elems)};
  }

  FiniteMonoid dual(FiniteMonoid const& m) {
    std::size_t       n = m.size();
    std::vector<Elem> table(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        table[a * n + b] = m(b, a);
      }
    }
    return FiniteMonoid(n, m.identity(), m.zero(), std::move(table), m.labels());
  }

  FiniteMonoid direct_product(FiniteMonoid const& m, FiniteMonoid const& n, std::size_t cap) {
    std::size_t size = m.size() * n.size();
    if (size > cap) {
      throw MonoidError("direct product of size " + std::to_string(size) + " exceeds cap "
                        + std::to_string(cap));
    }
    auto              idx = [&](Elem a, Elem b) { return static_cast<Elem>(a * n.size() + b); };
    std::vector<Elem> table(size * size);
    std::vector<std::string> labels(size);
    for (Elem a = 0; a < m.size(); ++a) {
      for (Elem b = 0; b < n.size(); ++b) {
        labels[idx(a, b)] = "(" + m.label(a) + "," + n.label(b) + ")";
        for (Elem c = 0; c < m.size(); ++c) {
          for (Elem d = 0; d < n.size(); ++d) {
            table[idx(a, b) * size + idx(c, d)] = idx(m(a, c), n(b, d));
          }
        }
      }
    }
    std::optional<Elem> zero;
    if (m.zero() && n.zero()) {
      zero = idx(*m.zero(), *n.zero());
    }
    return FiniteMonoid(size, idx(m.identity(), n.identity()), zero, std::move(table), std::move(labels));
  }

  std::string to_text(FiniteMonoid const& m) {
    std::ostringstream out;
    out << "MONOID " << m.size() << " identity=" << m.identity() << " zero=";
    if (m.zero()) {
      out << *m.zero();
    } else {
      out << "none";
    }
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << (i ? " " : "") << m.label(static_cast<Elem>(i));
    }
    out << '\n';
    for (Elem a = 0; a < m.size(); ++a) {
      for (Elem b = 0; b < m.size(); ++b) {
        out << (b ? " " : "") << m(a, b);
      }
      out << '\n';
    }
    return out.str();
  }

  FiniteMonoid from_text(std::string const& text) {
    std::istringstream in(text);
    std::string        line;
    auto               bad = [](std::string const& why) {
      return MonoidError("malformed monoid text: " + why);
    };
    if (!std::getline(in, line)) {
      throw bad("empty input");
    }
    std::istringstream header(line);
    std::string        tag, id_field, zero_field;
    std::size_t        size = 0;
    if (!(header >> tag >> size >> id_field >> zero_field) || tag != "MONOID") {
      throw bad("expected 'MONOID <size> identity=<i> zero=<j|none>'");
    }
    if (id_field.rfind("identity=", 0) != 0 || zero_field.rfind("zero=", 0) != 0) {
      throw bad("expected identity= and zero= fields");
    }
    Elem                identity;
    std::optional<Elem> zero;
    try {
      identity = static_cast<Elem>(std::stoul(id_field.substr(9)));
      if (zero_field.substr(5) != "none") {
        zero = static_cast<Elem>(std::stoul(zero_field.substr(5)));
      }
    } catch (std::exception const&) {
      throw bad("non-numeric identity or zero");
    }
    if (!std::getline(in, line)) {
      throw bad("missing label line");
    }
    std::istringstream       label_line(line);
    std::vector<std::string> labels;
    for (std::string l; label_line >> l;) {
      labels.push_back(l);
    }
    std::vector<Elem> table;
    table.reserve(size * size);
    for (std::size_t r = 0; r < size; ++r) {
      if (!std::getline(in, line)) {
        throw bad("missing table row " + std::to_string(r));
      }
      std::istringstream row(line);
      std::size_t        count = 0;
      for (long v; row >> v; ++count) {
        if (v < 0) {
          throw bad("negative entry");
        }
        table.push_back(static_cast<Elem>(v));
      }
      if (count != size || !row.eof()) {
        throw bad("row " + std::to_string(r) + " does not have " + std::to_string(size) + " entries");
      }
    }
    return FiniteMonoid(size, identity, zero, std::move(table), std::move(labels));
  }

  FiniteMonoid read_monoid_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw MonoidError("cannot open monoid file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
  }

  void write_monoid_file(FiniteMonoid const& m, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw MonoidError("cannot write monoid file " + path);
    }
    out << to_text(m);
  }

}  // namespace dpm
