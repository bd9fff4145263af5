#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hmatch/discounts.hpp"
#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/lp.hpp"
#include "hmatch/rational.hpp"

namespace hmatch {

/// Witness that g is not good: a subgraph (V, E') with a basic fractional matching x
/// such that sum_{f in N(e)} g(f) x(f) > 1 - g(e) x(e) for every e in E'.
struct StuckCertificate {
  std::vector<std::size_t> edges;  // E', ascending indices into the full hypergraph
  EdgeValues x;                    // x[i] is the value on edges[i]
  EdgeValues slack;                // LHS - RHS of the stuck inequality, all > 0

  bool operator==(const StuckCertificate&) const = default;
};

enum class StepKind { DropNonpositive, Peel };

struct PeelStep {
  StepKind kind;
  std::size_t edge;                   // index into the original hypergraph
  std::optional<Rational> lp_value;   // LP optimum of the subproblem (Peel only)
  bool added = false;                 // whether the unwinding put `edge` in M

  bool operator==(const PeelStep&) const = default;
};

struct RoundingSuccess {
  Matching matching;
  Rational guarantee;  // sum_{f in M} w(f)/g(f) with the original weights
  Rational wstar;
  std::vector<PeelStep> trace;

  bool operator==(const RoundingSuccess&) const = default;
};

struct RoundingError {
  StuckCertificate certificate;
  Rational wstar;
  std::vector<PeelStep> trace;

  bool operator==(const RoundingError&) const = default;
};

using RoundingOutcome = std::variant<RoundingSuccess, RoundingError>;

inline bool succeeded(const RoundingOutcome& outcome) {
  return std::holds_alternative<RoundingSuccess>(outcome);
}

/// sum_{f in N(e)} g(f) x(f) - (1 - g(e) x(e)); positive exactly when e is stuck.
inline Rational stuck_slack(const Hypergraph& h, const EdgeValues& g, const EdgeValues& x,
                            std::size_t e) {
  Rational lhs = 0;
  for (std::size_t f : h.neighborhood(e)) lhs += g[f] * x[f];
  return lhs - (1 - g[e] * x[e]);
}

inline bool is_stuck_edge(const Hypergraph& h, const EdgeValues& g, const EdgeValues& x,
                          std::size_t e) {
  check_size(h, g, "g");
  check_size(h, x, "x");
  return stuck_slack(h, g, x, e) > 0;
}

/// Lowest-index edge that may be peeled, i.e. is not stuck.
inline std::optional<std::size_t> find_unstuck_edge(const Hypergraph& h, const EdgeValues& g,
                                                    const EdgeValues& x) {
  check_size(h, g, "g");
  check_size(h, x, "x");
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (stuck_slack(h, g, x, e) <= 0) return e;
  }
  return std::nullopt;
}

/// Local-ratio update: w'(f) = w(f) - w(e) g(f)/g(e) on N(e), unchanged elsewhere.
inline EdgeValues peel_weights(const EdgeValues& w, const Hypergraph& h, std::size_t e,
                               const EdgeValues& g) {
  check_size(h, w, "w");
  check_size(h, g, "g");
  EdgeValues out = w;
  const Rational ratio = w[e] / g[e];
  for (std::size_t f : h.neighborhood(e)) out[f] -= ratio * g[f];
  return out;
}

namespace detail {

inline Rational guarantee_of(const EdgeValues& w, const EdgeValues& g, const Matching& m) {
  Rational total = 0;
  for (std::size_t e : m) total += w[e] / g[e];
  return total;
}

/// Restricts a stuck x to its support. Zero edges contribute nothing to any
/// neighbor sum, so the restriction stays stuck and basic.
inline StuckCertificate certificate_from(const Hypergraph& current,
                                         const std::vector<std::size_t>& original_index,
                                         const EdgeValues& g_current, const EdgeValues& x) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) support.push_back(i);
  }
  const Hypergraph sub = current.subgraph(support);
  EdgeValues g_sub;
  EdgeValues x_sub;
  for (std::size_t i : support) {
    g_sub.push_back(g_current[i]);
    x_sub.push_back(x[i]);
  }
  StuckCertificate cert;
  for (std::size_t j = 0; j < support.size(); ++j) {
    Rational slack = stuck_slack(sub, g_sub, x_sub, j);
    if (slack <= 0) throw std::logic_error("support restriction of a stuck point is not stuck");
    cert.edges.push_back(original_index[support[j]]);
    cert.slack.push_back(std::move(slack));
  }
  cert.x = std::move(x_sub);
  return cert;
}

}  // namespace detail

/// Iterated rounding with per-edge discounts. Each round drops a nonpositive edge
/// (lowest index), or solves the LP, peels the lowest-index unstuck edge and
/// recurses on the rest; unwinding adds a peeled edge when it is disjoint from the
/// matching built so far. If every edge is stuck the result is a certificate.
///
/// The recursion is run as a forward loop that records the removed edges followed
/// by a backward pass over that record.
inline RoundingOutcome find_matching(const WeightedInstance& inst, const DiscountProfile& profile) {
  const Hypergraph& graph = inst.graph;
  check_size(graph, inst.weights, "weights");
  check_size(graph, profile.g, "g");
  for (std::size_t e = 0; e < profile.g.size(); ++e) {
    if (profile.g[e] <= 0 || profile.g[e] > 1) {
      throw Error(Errc::InvalidParameter, "g(" + std::to_string(e) + ") outside (0,1]");
    }
  }
  const Rational wstar = fractional_optimum(graph, inst.weights);

  std::vector<std::size_t> alive(graph.edge_count());
  for (std::size_t e = 0; e < alive.size(); ++e) alive[e] = e;
  EdgeValues w = inst.weights;  // indexed by original edge
  std::vector<PeelStep> trace;

  while (!alive.empty()) {
    auto nonpositive = std::find_if(alive.begin(), alive.end(),
                                    [&](std::size_t e) { return w[e] <= 0; });
    if (nonpositive != alive.end()) {
      trace.push_back({StepKind::DropNonpositive, *nonpositive, std::nullopt});
      alive.erase(nonpositive);
      continue;
    }
    const Hypergraph current = graph.subgraph(alive);
    EdgeValues w_cur;
    EdgeValues g_cur;
    for (std::size_t e : alive) {
      w_cur.push_back(w[e]);
      g_cur.push_back(profile.g[e]);
    }
    BasicSolution lp = max_weight_basic_fractional_matching(current, w_cur);
    const auto chosen = find_unstuck_edge(current, g_cur, lp.x);
    if (!chosen) {
      return RoundingError{detail::certificate_from(current, alive, g_cur, lp.x), wstar,
                           std::move(trace)};
    }
    const EdgeValues peeled = peel_weights(w_cur, current, *chosen, g_cur);
    for (std::size_t i = 0; i < alive.size(); ++i) w[alive[i]] = peeled[i];
    trace.push_back({StepKind::Peel, alive[*chosen], std::move(lp.objective)});
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(*chosen));
  }

  Matching m;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    if (it->kind != StepKind::Peel) continue;
    const bool disjoint = std::none_of(m.begin(), m.end(), [&](std::size_t f) {
      return graph.intersects(it->edge, f);
    });
    if (disjoint) {
      m.push_back(it->edge);
      it->added = true;
    }
  }
  std::sort(m.begin(), m.end());
  Rational guarantee = detail::guarantee_of(inst.weights, profile.g, m);
  return RoundingSuccess{std::move(m), std::move(guarantee), wstar, std::move(trace)};
}

/// Independent check of a certificate: x is a basic fractional matching of (V, E')
/// and every edge of E' is strictly stuck with exactly the recorded slack.
inline bool verify_certificate(const Hypergraph& h, const EdgeValues& g,
                               const StuckCertificate& cert) {
  if (g.size() != h.edge_count()) return false;
  if (cert.edges.empty() || cert.x.size() != cert.edges.size() ||
      cert.slack.size() != cert.edges.size()) {
    return false;
  }
  for (std::size_t i = 0; i < cert.edges.size(); ++i) {
    if (cert.edges[i] >= h.edge_count()) return false;
    if (i > 0 && cert.edges[i] <= cert.edges[i - 1]) return false;
  }
  const Hypergraph sub = h.subgraph(cert.edges);
  if (!is_fractional_matching(sub, cert.x)) return false;
  if (!verify_basic(sub, cert.x)) return false;
  EdgeValues g_sub;
  for (std::size_t e : cert.edges) g_sub.push_back(g[e]);
  for (std::size_t j = 0; j < cert.edges.size(); ++j) {
    const Rational slack = stuck_slack(sub, g_sub, cert.x, j);
    if (slack <= 0 || slack != cert.slack[j]) return false;
  }
  return true;
}

/// Re-derives the outcome's claims: a Success holds a matching whose discounted
/// weight equals the recorded guarantee and is at least a freshly solved w*; an
/// Error holds a valid certificate.
inline bool verify_outcome(const WeightedInstance& inst, const DiscountProfile& profile,
                           const RoundingOutcome& outcome) {
  const Hypergraph& h = inst.graph;
  if (inst.weights.size() != h.edge_count() || profile.g.size() != h.edge_count()) return false;
  for (const auto& gv : profile.g) {
    if (gv <= 0 || gv > 1) return false;
  }
  const Rational wstar = fractional_optimum(h, inst.weights);
  if (const auto* ok = std::get_if<RoundingSuccess>(&outcome)) {
    for (std::size_t e : ok->matching) {
      if (e >= h.edge_count()) return false;
    }
    if (!is_matching(h, ok->matching)) return false;
    if (ok->wstar != wstar) return false;
    const Rational guarantee = detail::guarantee_of(inst.weights, profile.g, ok->matching);
    return guarantee == ok->guarantee && guarantee >= wstar;
  }
  const auto& err = std::get<RoundingError>(outcome);
  return err.wstar == wstar && verify_certificate(h, profile.g, err.certificate);
}

}  // namespace hmatch
