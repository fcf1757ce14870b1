#pragma once

// Canonical key for GL(n,Z)-equivalence of full-dimensional lattice
// polytopes, dims 1..3. Two steps: (1) canonicalize the facet/vertex
// pairing matrix under independent row and column permutations (lex-max
// row-major reading, found by backtracking with partition refinement);
// (2) over every column order achieving the canonical matrix, take the
// Hermite normal form of the vertex matrix and keep the smallest.

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fanomut/polytope.hpp"

namespace fanomut {
namespace detail {

struct PairingCanon {
  const std::vector<std::vector<Int>>& d;
  size_t rows, cols;
  std::vector<std::vector<Int>> best;           // canonical matrix so far
  std::set<std::vector<size_t>> best_col_orders;
  bool have_best = false;

  explicit PairingCanon(const std::vector<std::vector<Int>>& m)
      : d(m), rows(m.size()), cols(m.empty() ? 0 : m[0].size()) {}

  // blocks: ordered partition of column indices; refined as rows are chosen
  void run() {
    std::vector<std::vector<size_t>> blocks(1);
    for (size_t c = 0; c < cols; ++c) blocks[0].push_back(c);
    std::vector<bool> used(rows, false);
    std::vector<std::vector<Int>> acc;
    recurse(blocks, used, acc, 0);
  }

  void recurse(const std::vector<std::vector<size_t>>& blocks,
               std::vector<bool>& used, std::vector<std::vector<Int>>& acc,
               size_t depth) {
    if (depth == rows) {
      std::vector<size_t> order;
      for (const auto& b : blocks)
        for (size_t c : b) order.push_back(c);
      if (!have_best || acc > best) {
        best = acc;
        best_col_orders.clear();
        have_best = true;
      }
      if (acc == best) best_col_orders.insert(order);
      return;
    }
    // candidate pattern for each unused row: entries sorted descending
    // inside each block
    std::vector<Int> max_pat;
    std::vector<size_t> winners;
    std::vector<std::vector<Int>> patterns(rows);
    for (size_t r = 0; r < rows; ++r) {
      if (used[r]) continue;
      std::vector<Int> pat;
      pat.reserve(cols);
      for (const auto& b : blocks) {
        std::vector<Int> vals;
        vals.reserve(b.size());
        for (size_t c : b) vals.push_back(d[r][c]);
        std::sort(vals.rbegin(), vals.rend());
        pat.insert(pat.end(), vals.begin(), vals.end());
      }
      patterns[r] = pat;
      if (winners.empty() || pat > max_pat) {
        max_pat = pat;
        winners.assign(1, r);
      } else if (pat == max_pat) {
        winners.push_back(r);
      }
    }
    // prune: the partial matrix must stay on track for the global max
    if (have_best) {
      for (size_t i = 0; i < depth; ++i) {
        if (acc[i] != best[i]) {
          if (acc[i] < best[i]) return;
          break;  // strictly above: this branch will reset best
        }
      }
      if (depth < best.size()) {
        // compare the incoming row against the recorded one at this depth
        bool all_eq = true;
        for (size_t i = 0; i < depth; ++i)
          if (acc[i] != best[i]) all_eq = false;
        if (all_eq && max_pat < best[depth]) return;
      }
    }
    for (size_t r : winners) {
      std::vector<std::vector<size_t>> refined;
      for (const auto& b : blocks) {
        // stable split of the block by value, descending
        std::vector<size_t> sorted_b = b;
        std::stable_sort(sorted_b.begin(), sorted_b.end(),
                         [&](size_t x, size_t y) { return d[r][x] > d[r][y]; });
        size_t i = 0;
        while (i < sorted_b.size()) {
          size_t j = i;
          std::vector<size_t> piece;
          while (j < sorted_b.size() &&
                 d[r][sorted_b[j]] == d[r][sorted_b[i]]) {
            piece.push_back(sorted_b[j]);
            ++j;
          }
          refined.push_back(piece);
          i = j;
        }
      }
      used[r] = true;
      acc.push_back(patterns[r]);
      recurse(refined, used, acc, depth + 1);
      acc.pop_back();
      used[r] = false;
    }
  }
};

}  // namespace detail

inline std::string LatticePolytope::normal_form_key() const {
  require_full("normal_form_key");
  size_t m = vertices_.size();
  std::vector<std::vector<Int>> pairing(facets_.size(), std::vector<Int>(m));
  for (size_t i = 0; i < facets_.size(); ++i)
    for (size_t j = 0; j < m; ++j)
      pairing[i][j] = facets_[i].offset + dot(facets_[i].normal, vertices_[j]);
  detail::PairingCanon canon(pairing);
  canon.run();
  std::optional<IntMat> best;
  for (const std::vector<size_t>& order : canon.best_col_orders) {
    IntMat vm(ambient_dim_, IntVec(m));
    for (size_t k = 0; k < m; ++k)
      for (size_t i = 0; i < ambient_dim_; ++i)
        vm[i][k] = vertices_[order[k]][i];
    IntMat h = hermite_normal_form(vm).h;
    if (!best || h < *best) best = h;
  }
  std::ostringstream os;
  os << "nf" << ambient_dim_ << "x" << m << ":";
  for (const IntVec& row : *best) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << ";";
  }
  return os.str();
}

inline bool gl_equivalent(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  return a.normal_form_key() == b.normal_form_key();
}

// stable 8-hex-digit digest for graph node labels
inline std::string short_digest(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  unsigned int folded = static_cast<unsigned int>(h ^ (h >> 32));
  for (int i = 7; i >= 0; --i) os << ((folded >> (4 * i)) & 0xF);
  return os.str();
}

}  // namespace fanomut
