#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/linalg.hpp"
#include "hmatch/rational.hpp"

namespace hmatch {

enum class ConstraintKind { Vertex, Lower, Upper };

/// Identifies one constraint of the fractional matching polytope: the load row of a
/// vertex, or the bound x(e) >= 0 / x(e) <= 1 of an edge.
struct ActiveConstraint {
  ConstraintKind kind;
  std::size_t index;

  auto operator<=>(const ActiveConstraint&) const = default;
};

struct BasicSolution {
  EdgeValues x;
  Rational objective;
  std::vector<ActiveConstraint> active_rows;
};

/// Constraints of {x in [0,1]^E : load(v) <= 1} that hold with equality at x.
inline std::vector<ActiveConstraint> active_constraints(const Hypergraph& h, const EdgeValues& x) {
  check_size(h, x, "x");
  std::vector<ActiveConstraint> out;
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (vertex_load(h, x, v) == 1) out.push_back({ConstraintKind::Vertex, v});
  }
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (x[e] == 0) out.push_back({ConstraintKind::Lower, e});
    if (x[e] == 1) out.push_back({ConstraintKind::Upper, e});
  }
  return out;
}

namespace detail {

/// Dense tableau simplex for max w.x s.t. A x <= 1, x >= 0, where A is the
/// vertex-edge incidence matrix restricted to vertices that lie on some edge.
/// The bounds x(e) <= 1 are implied by any row through e, so they are not
/// materialized. Bland's rule fixes both the entering and leaving choice.
class IncidenceSimplex {
 public:
  IncidenceSimplex(const Hypergraph& h, std::span<const Rational> w) : m_(h.edge_count()) {
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
      if (!h.incident(v).empty()) row_vertices_.push_back(v);
    }
    rows_ = row_vertices_.size();
    cols_ = m_ + rows_;
    tableau_.assign(rows_, linalg::Row(cols_ + 1, Rational(0)));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t e : h.incident(row_vertices_[r])) tableau_[r][e] = 1;
      tableau_[r][m_ + r] = 1;
      tableau_[r][cols_] = 1;
    }
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t e = 0; e < m_; ++e) cost_[e] = w[e];
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) basis_[r] = m_ + r;
  }

  void solve() {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (cost_[j] > 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return;
      std::size_t leaving = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& a = tableau_[r][entering];
        if (a <= 0) continue;
        Rational ratio = tableau_[r][cols_] / a;
        if (leaving == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      // The feasible region is bounded, so some row always limits the step.
      pivot(leaving, entering);
    }
  }

  EdgeValues primal() const {
    EdgeValues x(m_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < m_) x[basis_[r]] = tableau_[r][cols_];
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    linalg::Row& p = tableau_[row];
    const Rational inv = 1 / p[col];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (p[j] != 0) {
        p[j] *= inv;
        nonzero.push_back(j);
      }
    }
    auto eliminate = [&](linalg::Row& target) {
      if (target[col] == 0) return;
      const Rational factor = target[col];
      for (std::size_t j : nonzero) target[j] -= factor * p[j];
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != row) eliminate(tableau_[r]);
    }
    eliminate(cost_);
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_vertices_;
  linalg::Matrix tableau_;
  linalg::Row cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// An optimal extreme point of the fractional matching polytope for weights `w`
/// (any sign). Exact and deterministic.
inline BasicSolution max_weight_basic_fractional_matching(const Hypergraph& h,
                                                          std::span<const Rational> w) {
  if (w.size() != h.edge_count()) {
    throw Error(Errc::SizeMismatch, std::to_string(w.size()) + " weights for " +
                                        std::to_string(h.edge_count()) + " edges");
  }
  detail::IncidenceSimplex simplex(h, w);
  simplex.solve();
  BasicSolution out;
  out.x = simplex.primal();
  out.objective = 0;
  for (std::size_t e = 0; e < w.size(); ++e) out.objective += w[e] * out.x[e];
  out.active_rows = active_constraints(h, out.x);
  return out;
}

inline BasicSolution max_weight_basic_fractional_matching(const WeightedInstance& inst) {
  return max_weight_basic_fractional_matching(inst.graph, inst.weights);
}

/// w*: the optimum of the fractional matching LP.
inline Rational fractional_optimum(const Hypergraph& h, std::span<const Rational> w) {
  return max_weight_basic_fractional_matching(h, w).objective;
}

/// True iff x is an extreme point: its active constraints (tight vertex rows plus
/// tight bounds) have rank |E|. Degenerate points pass when the rank is full.
inline bool verify_basic(const Hypergraph& h, const EdgeValues& x) {
  if (!is_fractional_matching(h, x)) {
    throw Error(Errc::InfeasiblePoint, "x violates the fractional matching constraints");
  }
  const std::size_t m = h.edge_count();
  linalg::Matrix rows;
  for (const auto& c : active_constraints(h, x)) {
    linalg::Row row(m, Rational(0));
    if (c.kind == ConstraintKind::Vertex) {
      for (std::size_t e : h.incident(c.index)) row[e] = 1;
    } else {
      row[c.index] = 1;
    }
    rows.push_back(std::move(row));
  }
  return linalg::rank(std::move(rows)) == m;
}

/// |L| <= |B(L)|, where B(L) are the tight vertices covered by L. Requires x reduced
/// and basic.
inline bool check_L_B_inequality(const Hypergraph& h, const EdgeValues& x,
                                 std::span<const std::size_t> edges) {
  if (!is_reduced(h, x)) throw Error(Errc::NotReduced, "x has a value outside (0,1)");
  if (!verify_basic(h, x)) throw Error(Errc::NotBasic, "x is not an extreme point");
  std::vector<std::size_t> l(edges.begin(), edges.end());
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  std::vector<char> covered(h.vertex_count(), 0);
  for (std::size_t e : l) {
    for (std::size_t v : h.edge(e)) covered[v] = 1;
  }
  std::size_t b_count = 0;
  for (std::size_t v : tight_vertices(h, x)) b_count += covered[v];
  return l.size() <= b_count;
}

}  // namespace hmatch
