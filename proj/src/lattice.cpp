#include "dpm/lattice.hpp"

#include "dpm/expr.hpp"

namespace dpm {

  std::vector<LatticeNode> lattice_nodes() {
    return {
        {"M(empty)", "M()"},
        {"M(1)", "M(1)"},
        {"M(x)", "M(x)"},
        {"M(xy)", "M(xy)"},
        {"M_gamma(ta+)", "M_gamma(ta+)"},
        {"M_gamma(a+t)", "M_gamma(a+t)"},
        {"M_lambda(ata+)", "M_lambda(ata+)"},
        {"M_gamma(a+ta+)", "M_gamma(a+ta+)"},
        {"M_lambda(a+ta+)", "M_lambda(a+ta+)"},
        {"A0^1 = M_tau1(a+b+)", "M_tau1(a+b+)"},
        {"N = M_lambda(a+btb+)", "M_lambda(a+btb+)"},
        {"M_lambda(ata+b+)", "M_lambda(ata+b+)"},
        {"K = M_lambda(bta+b+)", "M_lambda(bta+b+)"},
    };
  }

  std::vector<std::pair<std::size_t, std::size_t>> lattice_covers() {
    return {{0, 1}, {1, 2},  {2, 3},  {3, 4},  {3, 5},   {4, 6},   {4, 7},
            {5, 7}, {7, 8},  {7, 9},  {6, 8},  {8, 10},  {10, 11}, {9, 11}, {11, 12}};
  }

  std::vector<Identity> separator_candidates() {
    std::vector<Identity> out;
    for (auto const* text : {
             "x=y",         "x=x^2",        "xy=yx",           "x^2=x^3",         "xtx=x^2t",
             "xtx=tx^2",    "xtx=x^2tx",    "xtx=xtx^2",       "x^2t=x^2tx",      "tx^2=xtx^2",
             "x^2y^2=y^2x^2", "(xy)^2=(yx)^2", "xtsx=xtxsx",   "x^2yty=xyxty",    "xytxsy=yxtxsy",
             "xtysxy=xtysyx", "xzxtxsx=xzxtsx", "xy^2tx=yxytx", "xtyxsy=xtxyxsy", "xtysyx=xtysxyx",
         }) {
      out.push_back(parse_identity(text));
    }
    return out;
  }

  Lattice build_lattice() {
    Lattice l{lattice_nodes(), {}};
    auto    candidates = separator_candidates();
    for (auto [lo, hi] : lattice_covers()) {
      auto        lower = eval_monoid(l.nodes[lo].expr);
      auto        upper = eval_monoid(l.nodes[hi].expr);
      LatticeEdge e{lo, hi, std::nullopt};
      for (auto const& id : candidates) {
        if (satisfies(*lower, id).holds && !satisfies(*upper, id).holds) {
          e.separator = id;
          break;
        }
      }
      l.edges.push_back(e);
    }
    return l;
  }

  std::string to_dot(Lattice const& l) {
    std::string out = "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
      out += "  n" + std::to_string(i) + " [label=\"" + l.nodes[i].name + "\"];\n";
    }
    for (auto const& e : l.edges) {
      out += "  n" + std::to_string(e.lower) + " -> n" + std::to_string(e.upper) + " [label=\""
             + (e.separator ? to_string(*e.separator) : std::string("?")) + "\"];\n";
    }
    out += "}\n";
    return out;
  }

}  // namespace dpm
