#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmatch/discounts.hpp"
#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/linalg.hpp"
#include "hmatch/lp.hpp"
#include "hmatch/rational.hpp"
#include "hmatch/rounding.hpp"

namespace hmatch {

// ---------------------------------------------------------------------------
// Bi-uniform hypergraphs: edges of sizes k < l with discounts p on k-edges and
// q on l-edges.
// ---------------------------------------------------------------------------

struct BiUniformParams {
  std::size_t k;
  std::size_t l;
  Rational p;
  Rational q;

  void validate() const {
    if (k < 2 || l <= k) {
      throw Error(Errc::InvalidParameter, "need 2 <= k < l, got k=" + std::to_string(k) +
                                              " l=" + std::to_string(l));
    }
    if (!(q > 0 && q <= p && p <= 1)) {
      throw Error(Errc::InvalidParameter, "need 0 < q <= p <= 1, got p=" + to_string(p) +
                                              " q=" + to_string(q));
    }
  }
};

/// T = p (k-1) l / ((p - q) k): the largest number of k-edges an l-edge can touch
/// while its term in the upper bound on the slack sum stays nonnegative.
inline Rational biuniform_T(const BiUniformParams& params) {
  params.validate();
  if (params.p == params.q) {
    throw Error(Errc::DegenerateEqualDiscounts, "T is unbounded when p = q");
  }
  const Rational k = static_cast<unsigned long>(params.k);
  const Rational l = static_cast<unsigned long>(params.l);
  return params.p * (k - 1) * l / ((params.p - params.q) * k);
}

namespace detail {

struct GfaTerms {
  Rational lhs_num;  // p q (k-1)(l-1) + n (p-q)^2
  Rational lhs_den;  // p (k-1) l - k n (p-q)
  Rational rhs_num;  // p (k-1)(q l - 1) + n (p-q)(p k - 1)
  Rational rhs_den;  // p (k-1)
};

inline GfaTerms gfa_terms(const BiUniformParams& pr, const Rational& n) {
  const Rational k = static_cast<unsigned long>(pr.k);
  const Rational l = static_cast<unsigned long>(pr.l);
  const Rational d = pr.p - pr.q;
  return GfaTerms{pr.p * pr.q * (k - 1) * (l - 1) + n * d * d, pr.p * (k - 1) * l - k * n * d,
                  pr.p * (k - 1) * (pr.q * l - 1) + n * d * (pr.p * k - 1), pr.p * (k - 1)};
}

}  // namespace detail

/// Whether an l-edge touching n k-edges is ruled out in a stuck reduced basic
/// matching: (p q (k-1)(l-1) + n (p-q)^2) / (p (k-1) l - k n (p-q))
///            >= (p (k-1)(q l - 1) + n (p-q)(p k - 1)) / (p (k-1)).
/// The two per-edge bounds this combines (on x of a k-edge through the l-edge
/// mass a_l(e), and on x of an l-edge through its k-degree n_k(f)) are folded in.
inline bool gfa_holds(const BiUniformParams& params, const Rational& n) {
  params.validate();
  if (n < 0) throw Error(Errc::OutOfRangeN, "n = " + to_string(n) + " < 0");
  const auto t = detail::gfa_terms(params, n);
  if (t.lhs_den <= 0) {
    throw Error(Errc::OutOfRangeN, "n = " + to_string(n) + " makes the left denominator <= 0");
  }
  return t.lhs_num / t.lhs_den >= t.rhs_num / t.rhs_den;
}

/// The inequality with both denominators cleared (valid where the left
/// denominator is positive): nonnegative exactly when gfa_holds.
inline Rational gfa_polynomial(const BiUniformParams& params, const Rational& n) {
  const auto t = detail::gfa_terms(params, n);
  return t.lhs_num * t.rhs_den - t.rhs_num * t.lhs_den;
}

struct CheckMode {
  enum class Kind { Integer, Grid };
  Kind kind = Kind::Integer;
  Rational step = 0;      // grid spacing; a fraction of T when `relative`
  bool relative = false;

  static CheckMode integer() { return {}; }
  static CheckMode grid(Rational step) { return {Kind::Grid, std::move(step), false}; }
  static CheckMode grid_relative(Rational fraction) { return {Kind::Grid, std::move(fraction), true}; }
};

struct GfaPoint {
  Rational n;
  bool holds;
};

struct ConditionReport {
  Rational T;
  bool p_within_hstar = false;
  std::vector<GfaPoint> integer_points;
  std::size_t grid_points_checked = 0;
  std::size_t grid_midpoints_checked = 0;
  std::vector<Rational> grid_failures;  // grid points or midpoints where the inequality fails
  bool endpoint_excluded = false;       // n = T was skipped (left denominator vanishes)
  bool verdict = false;
};

/// Checks p <= h*(k) and the inequality at every integer n in [0, floor(T)].
/// Grid mode also sweeps n = 0, step, 2 step, ... < T exactly and evaluates the
/// cleared polynomial at the midpoints of consecutive grid points (and of the last
/// point and T). This is a dense numeric surrogate for the real-n statement.
inline ConditionReport biuniform_conditions(const BiUniformParams& params, const CheckMode& mode) {
  ConditionReport report;
  report.T = biuniform_T(params);
  report.p_within_hstar = params.p <= h_star(params.k);
  bool ok = report.p_within_hstar;

  const Integer floor_t = numerator_of(report.T) / denominator_of(report.T);
  for (Integer i = 0; i <= floor_t; ++i) {
    const Rational n(i);
    if (n == report.T) {
      report.endpoint_excluded = true;
      break;
    }
    const bool holds = gfa_holds(params, n);
    ok = ok && holds;
    report.integer_points.push_back({n, holds});
  }

  if (mode.kind == CheckMode::Kind::Grid) {
    const Rational step = mode.relative ? Rational(mode.step * report.T) : mode.step;
    if (step <= 0) throw Error(Errc::InvalidParameter, "grid step must be positive");
    Rational n = 0;
    while (n < report.T) {
      const bool holds = gfa_holds(params, n);
      ++report.grid_points_checked;
      if (!holds) report.grid_failures.push_back(n);
      ok = ok && holds;
      Rational next = n + step;
      const Rational mid = (n + std::min(next, report.T)) / 2;
      ++report.grid_midpoints_checked;
      if (gfa_polynomial(params, mid) < 0) {
        report.grid_failures.push_back(mid);
        ok = false;
      }
      n = std::move(next);
    }
    report.endpoint_excluded = true;
  }
  report.verdict = ok;
  return report;
}

/// Choice q = 1/(k + 1/k) = k/(k^2+1) for l = k + 1.
inline Rational balanced_q(std::size_t k) {
  detail::require_k(k, 2, "balanced_q");
  const Integer kk = static_cast<unsigned long>(k);
  return Rational(kk, kk * kk + 1);
}

struct MaxQResult {
  Rational q;
  std::size_t evaluations = 0;
  bool monotone = true;      // no verdict flip contradicting a threshold was seen
  bool linear_scan = false;  // fell back to scanning down from p at resolution tol
};

/// Largest q in (0, p) (to within tol) for which biuniform_conditions passes, by
/// bisection. A coarse probe of the whole interval checks that the verdict looks
/// like a threshold in q; if not, the answer comes from a linear scan instead.
inline MaxQResult max_q(std::size_t k, std::size_t l, const Rational& p, const CheckMode& mode,
                        const Rational& tol) {
  if (tol <= 0) throw Error(Errc::InvalidParameter, "tol must be positive");
  if (p > h_star(k)) throw Error(Errc::InvalidParameter, "p exceeds h*(k)");
  MaxQResult result;
  auto verdict = [&](const Rational& q) {
    ++result.evaluations;
    return biuniform_conditions(BiUniformParams{k, l, p, q}, mode).verdict;
  };
  Rational lo = std::min(tol, Rational(p / 2));
  if (!verdict(lo)) throw Error(Errc::NoFeasibleQ, "fails already at q = " + to_string(lo));
  Rational hi = p;  // never evaluated: q = p is degenerate
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (verdict(mid)) lo = std::move(mid); else hi = std::move(mid);
  }

  constexpr int kProbes = 32;
  for (int i = 1; i < kProbes && result.monotone; ++i) {
    const Rational q = p * i / kProbes;
    if (q == lo || q == hi) continue;
    const bool v = verdict(q);
    if ((q < lo && !v) || (q > hi && v)) result.monotone = false;
  }
  if (result.monotone) {
    result.q = std::move(lo);
    return result;
  }
  result.linear_scan = true;
  for (Rational q = p - tol; q > 0; q -= tol) {
    if (verdict(q)) {
      result.q = q;
      return result;
    }
  }
  throw Error(Errc::NoFeasibleQ, "linear scan found no feasible q");
}

// ---------------------------------------------------------------------------
// Brute-force oracles for small instances.
// ---------------------------------------------------------------------------

struct MatchingValue {
  Matching matching;
  Rational value;
};

/// Exact maximum-weight matching by include-first depth-first search with
/// disjointness pruning and a remaining-positive-weight bound. Among optimal
/// matchings the first one reached is returned.
inline MatchingValue brute_force_max_matching(const Hypergraph& h, const EdgeValues& w,
                                              std::size_t cap = 22) {
  check_size(h, w, "weights");
  const std::size_t m = h.edge_count();
  if (m > cap) {
    throw Error(Errc::InstanceTooLarge, std::to_string(m) + " edges exceeds cap " +
                                            std::to_string(cap));
  }
  std::vector<Rational> suffix(m + 1, Rational(0));
  for (std::size_t e = m; e-- > 0;) suffix[e] = suffix[e + 1] + (w[e] > 0 ? w[e] : Rational(0));

  MatchingValue best{{}, Rational(0)};
  Matching current;
  Rational value = 0;
  std::vector<int> used(h.vertex_count(), 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t e) {
    if (value + suffix[e] <= best.value) return;
    if (e == m) {
      best = {current, value};
      return;
    }
    if (w[e] > 0) {
      const Edge& verts = h.edge(e);
      const bool free = std::none_of(verts.begin(), verts.end(), [&](std::size_t v) { return used[v]; });
      if (free) {
        for (std::size_t v : verts) used[v] = 1;
        current.push_back(e);
        value += w[e];
        dfs(e + 1);
        value -= w[e];
        current.pop_back();
        for (std::size_t v : verts) used[v] = 0;
      }
    }
    dfs(e + 1);
  };
  dfs(0);
  return best;
}

inline MatchingValue brute_force_max_matching(const WeightedInstance& inst, std::size_t cap = 22) {
  return brute_force_max_matching(inst.graph, inst.weights, cap);
}

namespace detail {

/// Lexicographic k-subsets of {0..n-1}; `visit` returns true to stop.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Extreme points of the polytope of (V, subset) with every coordinate in (0,1),
/// as values on `subset` (ascending). A reduced extreme point is the unique
/// solution of |subset| tight load rows; a tight row through a single edge would
/// force that edge to 1, so only rows of vertices of degree >= 2 are candidates.
inline std::vector<EdgeValues> reduced_vertices(const Hypergraph& h,
                                                std::span<const std::size_t> subset) {
  const std::size_t f = subset.size();
  if (f == 0) return {EdgeValues{}};
  const Hypergraph sub = h.subgraph(subset);
  std::set<std::vector<std::size_t>> distinct_rows;
  for (std::size_t v = 0; v < sub.vertex_count(); ++v) {
    const auto inc = sub.incident(v);
    if (inc.size() >= 2) distinct_rows.emplace(inc.begin(), inc.end());
  }
  if (distinct_rows.size() < f) return {};
  std::vector<std::vector<std::size_t>> rows(distinct_rows.begin(), distinct_rows.end());
  std::vector<char> covered(f, 0);
  for (const auto& r : rows) {
    for (std::size_t e : r) covered[e] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return {};

  std::set<EdgeValues> found;
  detail::for_each_combination(rows.size(), f, [&](std::span<const std::size_t> pick) {
    linalg::Matrix a(f, linalg::Row(f, Rational(0)));
    for (std::size_t i = 0; i < f; ++i) {
      for (std::size_t e : rows[pick[i]]) a[i][e] = 1;
    }
    auto x = linalg::solve_square(std::move(a), linalg::Row(f, Rational(1)));
    if (!x) return false;
    for (const auto& v : *x) {
      if (v <= 0 || v >= 1) return false;
    }
    for (const auto& r : rows) {
      Rational load = 0;
      for (std::size_t e : r) load += (*x)[e];
      if (load > 1) return false;
    }
    found.insert(std::move(*x));
    return false;
  });
  return {found.begin(), found.end()};
}

/// All extreme points of {x in [0,1]^E : load(v) <= 1}. Every extreme point splits
/// uniquely into a matching O at 1, a set F of fractional edges avoiding the
/// vertices of O where x restricted to F is a reduced extreme point of (V, F), and
/// zeros elsewhere. Sorted lexicographically.
inline std::vector<EdgeValues> enumerate_polytope_vertices(const Hypergraph& h, std::size_t cap = 10) {
  const std::size_t m = h.edge_count();
  if (m > cap) {
    throw Error(Errc::InstanceTooLarge, std::to_string(m) + " edges exceeds cap " +
                                            std::to_string(cap));
  }
  std::set<EdgeValues> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> frac;
    std::vector<char> blocked(h.vertex_count(), 0);
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1u) {
        frac.push_back(e);
        for (std::size_t v : h.edge(e)) blocked[v] = 1;
      }
    }
    const auto partial = reduced_vertices(h, frac);
    if (partial.empty()) continue;
    std::vector<std::size_t> free_edges;
    for (std::size_t e = 0; e < m; ++e) {
      const Edge& verts = h.edge(e);
      if (std::none_of(verts.begin(), verts.end(), [&](std::size_t v) { return blocked[v]; })) {
        free_edges.push_back(e);
      }
    }
    // Every matching among free_edges combines with every partial point.
    std::vector<std::size_t> ones;
    std::function<void(std::size_t)> extend = [&](std::size_t i) {
      if (i == free_edges.size()) {
        for (const auto& xf : partial) {
          EdgeValues x(m, Rational(0));
          for (std::size_t j = 0; j < frac.size(); ++j) x[frac[j]] = xf[j];
          for (std::size_t e : ones) x[e] = 1;
          out.insert(std::move(x));
        }
        return;
      }
      extend(i + 1);
      const Edge& verts = h.edge(free_edges[i]);
      if (std::none_of(verts.begin(), verts.end(), [&](std::size_t v) { return blocked[v]; })) {
        for (std::size_t v : verts) blocked[v] = 1;
        ones.push_back(free_edges[i]);
        extend(i + 1);
        ones.pop_back();
        for (std::size_t v : verts) blocked[v] = 0;
      }
    };
    extend(0);
  }
  return {out.begin(), out.end()};
}

/// Exhaustive search for a subgraph (V, E') with a basic fractional matching that
/// is stuck for g. Subsets go by increasing size, then lexicographically; only
/// reduced extreme points are tried, since a stuck point restricted to its support
/// stays stuck. Subsets with a singleton edge or an edge without neighbors in E'
/// cannot be stuck and are skipped.
inline std::optional<StuckCertificate> search_stuck(const Hypergraph& h, const EdgeValues& g,
                                                    std::size_t cap = 10) {
  check_size(h, g, "g");
  const std::size_t m = h.edge_count();
  if (m > cap) {
    throw Error(Errc::InstanceTooLarge, std::to_string(m) + " edges exceeds cap " +
                                            std::to_string(cap));
  }
  std::optional<StuckCertificate> result;
  for (std::size_t size = 1; size <= m && !result; ++size) {
    detail::for_each_combination(m, size, [&](std::span<const std::size_t> subset) {
      for (std::size_t e : subset) {
        if (h.edge_size(e) == 1) return false;
        const auto& nbrs = h.neighborhood(e);
        const bool lonely = std::none_of(subset.begin(), subset.end(), [&](std::size_t f) {
          return std::binary_search(nbrs.begin(), nbrs.end(), f);
        });
        if (lonely) return false;
      }
      const Hypergraph sub = h.subgraph(subset);
      EdgeValues g_sub;
      for (std::size_t e : subset) g_sub.push_back(g[e]);
      for (auto& x : reduced_vertices(h, subset)) {
        StuckCertificate cert;
        bool stuck = true;
        for (std::size_t j = 0; j < subset.size() && stuck; ++j) {
          Rational slack = stuck_slack(sub, g_sub, x, j);
          stuck = slack > 0;
          cert.slack.push_back(std::move(slack));
        }
        if (stuck) {
          cert.edges.assign(subset.begin(), subset.end());
          cert.x = std::move(x);
          result = std::move(cert);
          return true;
        }
      }
      return false;
    });
  }
  return result;
}

/// Weight of each edge scaled by its size factor |e| - 1 + 1/|e|.
inline EdgeValues fks_weights(const WeightedInstance& inst) {
  EdgeValues out;
  out.reserve(inst.weights.size());
  for (std::size_t e = 0; e < inst.weights.size(); ++e) {
    const Rational k = static_cast<unsigned long>(inst.graph.edge_size(e));
    out.push_back(inst.weights[e] * (k - 1 + 1 / k));
  }
  return out;
}

struct FksReport {
  MatchingValue best;  // max over matchings of the size-scaled weight
  Rational wstar;
  bool holds;
};

inline FksReport fks_primal_report(const WeightedInstance& inst, std::size_t cap = 22) {
  FksReport r{brute_force_max_matching(inst.graph, fks_weights(inst), cap),
              fractional_optimum(inst.graph, inst.weights), false};
  r.holds = r.best.value >= r.wstar;
  return r;
}

/// Whether some matching M has sum_{e in M} (|e| - 1 + 1/|e|) w(e) >= w*.
inline bool fks_primal_check(const WeightedInstance& inst, std::size_t cap = 22) {
  return fks_primal_report(inst, cap).holds;
}

}  // namespace hmatch
