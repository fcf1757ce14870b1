#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fanomut/lattice.hpp"
#include "fanomut/laurent.hpp"
#include "fanomut/mutation.hpp"
#include "fanomut/normal_form.hpp"
#include "fanomut/numbers.hpp"
#include "fanomut/parse.hpp"
#include "fanomut/polytope.hpp"
#include "fanomut/rigidity.hpp"

// Bounded breadth-first exploration of the mutation graph. Nodes collect
// mutation results up to shears along the arriving weight; edges carry the
// canonical label of the datum that produced them.

namespace fanomut {

struct GraphNode {
  std::size_t id = 0;
  std::string class_key;   // normal form key of the Newton polytope
  LaurentPolynomial rep;   // polynomial first reached for this node
  std::size_t depth = 0;   // BFS distance from the root
  bool expanded = false;   // false on the frontier
};

struct GraphEdge {
  std::size_t a = 0;       // endpoint ids, a <= b
  std::size_t b = 0;
  std::string label;
  IntVec w;                // datum as first discovered
  LaurentPolynomial factor;
};

namespace detail {

// b on the w-wall with e -> e + (w.e) b carrying g onto h, if one exists.
// Any such b sends an off-wall anchor of g to a support point of h at the
// same height, so the quotient of one exponent difference decides all.
inline std::optional<IntVec> shear_between(const LaurentPolynomial& g,
                                           const LaurentPolynomial& h,
                                           const IntVec& w) {
  const auto& gt = g.terms();
  const auto& ht = h.terms();
  if (gt.size() != ht.size()) return std::nullopt;
  const IntVec* e0 = nullptr;
  Int h0 = 0;
  for (const auto& [e, c] : gt) {
    Int he = dot(w, e);
    if (he != 0) {
      e0 = &e;
      h0 = he;
      break;
    }
  }
  auto carried = [&](const IntVec& b) {
    for (const auto& [e, c] : gt) {
      Int he = dot(w, e);
      IntVec img = e;
      for (std::size_t i = 0; i < img.size(); ++i) img[i] += Int(he * b[i]);
      auto it = ht.find(img);
      if (it == ht.end() || !(it->second == c)) return false;
    }
    return true;
  };
  if (e0 == nullptr) {
    IntVec zero(w.size(), Int(0));
    if (carried(zero)) return zero;
    return std::nullopt;
  }
  const AffineForm& c0 = gt.at(*e0);
  for (const auto& [e1, c1] : ht) {
    if (dot(w, e1) != h0 || !(c1 == c0)) continue;
    IntVec b(w.size(), Int(0));
    bool integral = true;
    for (std::size_t i = 0; i < b.size(); ++i) {
      Int diff = Int(e1[i] - (*e0)[i]);
      if (Int(diff % h0) != 0) {
        integral = false;
        break;
      }
      b[i] = Int(diff / h0);
    }
    if (!integral || dot(w, b) != 0) continue;
    if (carried(b)) return b;
  }
  return std::nullopt;
}

}  // namespace detail

class MutationGraph {
 public:
  using EdgeKey = std::tuple<std::size_t, std::size_t, std::string>;

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t depth_limit() const { return depth_limit_; }

  std::vector<GraphEdge> edges() const {
    std::vector<GraphEdge> out;
    out.reserve(edges_.size());
    for (const auto& [k, d] : edges_)
      out.push_back(
          {std::get<0>(k), std::get<1>(k), std::get<2>(k), d.first, d.second});
    return out;
  }

  bool has_edge(std::size_t a, std::size_t b, const std::string& label) const {
    if (a > b) std::swap(a, b);
    return edges_.count({a, b, label}) != 0;
  }

  std::size_t valency(std::size_t id) const {
    if (id >= nodes_.size())
      throw domain_error("no-such-node",
                         "graph has " + std::to_string(nodes_.size()) +
                             " nodes, asked for " + std::to_string(id));
    if (!nodes_[id].expanded)
      throw domain_error("frontier-node",
                         "node " + std::to_string(id) +
                             " sits on the exploration frontier");
    std::size_t count = 0;
    for (const auto& [k, d] : edges_)
      if (std::get<0>(k) == id || std::get<1>(k) == id) ++count;
    return count;
  }

  std::string emit_dot() const {
    std::ostringstream os;
    os << "graph mutation_graph {\n";
    for (const GraphNode& n : nodes_) {
      os << "  n" << n.id << " [label=\"" << short_digest(n.class_key) << "\"";
      if (!n.expanded) os << " style=dashed";
      os << "];\n";
    }
    for (const auto& [k, d] : edges_)
      os << "  n" << std::get<0>(k) << " -- n" << std::get<1>(k) << " [label=\""
         << std::get<2>(k) << "\"];\n";
    os << "}\n";
    return os.str();
  }

  std::string emit_json() const {
    std::ostringstream os;
    os << "{\n  \"depth\": " << depth_limit_ << ",\n  \"nodes\": [\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const GraphNode& n = nodes_[i];
      os << "    {\"id\": " << n.id << ", \"class\": \""
         << short_digest(n.class_key) << "\", \"depth\": " << n.depth
         << ", \"expanded\": " << (n.expanded ? "true" : "false")
         << ", \"polynomial\": \"" << to_string(n.rep) << "\", \"vertices\": [";
      const LatticePolytope np = n.rep.newton_polytope();
      const auto& verts = np.vertices();
      for (std::size_t j = 0; j < verts.size(); ++j) {
        os << (j ? "," : "") << "[";
        for (std::size_t t = 0; t < verts[j].size(); ++t)
          os << (t ? "," : "") << verts[j][t];
        os << "]";
      }
      os << "]}" << (i + 1 < nodes_.size() ? "," : "") << "\n";
    }
    os << "  ],\n  \"edges\": [\n";
    std::size_t i = 0;
    for (const auto& [k, d] : edges_) {
      os << "    {\"a\": " << std::get<0>(k) << ", \"b\": " << std::get<1>(k)
         << ", \"label\": \"" << std::get<2>(k) << "\", \"w\": [";
      for (std::size_t t = 0; t < d.first.size(); ++t)
        os << (t ? "," : "") << d.first[t];
      os << "], \"factor\": \"" << to_string(d.second) << "\"}"
         << (++i < edges_.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
  }

 private:
  friend MutationGraph explore(const LaurentPolynomial&, std::size_t,
                               const MutationSearchBudget&, std::size_t);

  std::vector<GraphNode> nodes_;
  std::map<EdgeKey, std::pair<IntVec, LaurentPolynomial>> edges_;
  std::size_t depth_limit_ = 0;
};

// BFS from f: every node of depth < limit is expanded through its full
// candidate list; a mutation result lands on an existing node exactly when
// some shear along the arriving weight carries it onto that node's
// representative, otherwise it founds a new node. Edges between the same
// pair with the same label collapse, so inverse arrows do not duplicate.
inline MutationGraph explore(const LaurentPolynomial& f, std::size_t depth,
                             const MutationSearchBudget& budget = {},
                             std::size_t max_nodes = 512) {
  detail::check_budget(budget);
  if (max_nodes == 0)
    throw domain_error("node-cap", "node cap must be positive");
  for (const auto& [e, c] : f.terms())
    if (!c.is_constant())
      throw domain_error("parametric-input",
                         "graph exploration needs constant coefficients");
  if (f.is_zero() || !f.is_normalised())
    throw domain_error("not-normalised", "vertex coefficients must be 1");
  if (!f.has_zero_constant_term())
    throw domain_error("nonzero-constant-term",
                       "graph roots have constant term 0");
  LatticePolytope root_p = f.newton_polytope();
  if (!root_p.full_dim() || !root_p.is_fano())
    throw domain_error("not-fano", "Newton polytope must be Fano");

  MutationGraph g;
  g.depth_limit_ = depth;
  g.nodes_.push_back({0, root_p.normal_form_key(), f, 0, false});
  for (std::size_t v = 0; v < g.nodes_.size(); ++v) {
    if (g.nodes_[v].depth >= depth) continue;
    const LaurentPolynomial rep = g.nodes_[v].rep;
    const std::size_t vdepth = g.nodes_[v].depth;
    g.nodes_[v].expanded = true;
    for (const MutationData& md : candidate_mutations(rep, budget)) {
      LaurentPolynomial image = mutate(rep, md.w, md.factor);
      std::string key = image.newton_polytope().normal_form_key();
      std::size_t target = g.nodes_.size();
      for (const GraphNode& u : g.nodes_) {
        if (u.class_key != key) continue;
        if (detail::shear_between(image, u.rep, md.w)) {
          target = u.id;
          break;
        }
      }
      if (target == g.nodes_.size()) {
        if (g.nodes_.size() >= max_nodes)
          throw domain_error("node-cap",
                             "exploration exceeded " +
                                 std::to_string(max_nodes) + " nodes");
        g.nodes_.push_back({target, std::move(key), std::move(image),
                            vdepth + 1, false});
      }
      g.edges_.try_emplace({std::min(v, target), std::max(v, target),
                            canonical_edge_label(md.w, md.factor)},
                           md.w, detail::anchor_factor(md.w, md.factor));
    }
  }
  return g;
}

}  // namespace fanomut
