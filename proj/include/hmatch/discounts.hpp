#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/rational.hpp"

namespace hmatch {

/// 100 significant decimal digits; enough headroom for the cancellation in the
/// derangement closed form up to k around 40.
using HighPrecision = boost::multiprecision::cpp_dec_float_100;

namespace detail {

inline void require_k(std::size_t k, std::size_t min, const char* what) {
  if (k < min) {
    throw Error(Errc::InvalidK, std::string(what) + " needs k >= " + std::to_string(min) +
                                    ", got " + std::to_string(k));
  }
}

/// sum_{i=1}^{terms} (-1)^{i+1} (k-2)! / (k-2+i)!
inline Rational alternating_tail(std::size_t k, std::size_t terms) {
  Rational total = 0;
  Integer denom = 1;  // (k-2+i)! / (k-2)!
  for (std::size_t i = 1; i <= terms; ++i) {
    denom *= static_cast<unsigned long>(k - 2 + i);
    const Rational term(Integer(1), denom);
    if (i % 2 == 1) total += term; else total -= term;
  }
  return total;
}

}  // namespace detail

/// h*(k) = 1/(k - 1 + 1/k) = k/(k^2 - k + 1), the conjectured optimal discount.
inline Rational h_star(std::size_t k) {
  detail::require_k(k, 1, "h_star");
  const Integer kk = static_cast<unsigned long>(k);
  return Rational(kk, kk * kk - kk + 1);
}

/// Rank-r schedule. Alternating-sum formula for 2 <= k <= r, zero beyond r.
inline Rational h_r(std::size_t r, std::size_t k) {
  detail::require_k(r, 2, "h_r (r)");
  detail::require_k(k, 2, "h_r");
  if (k > r) return Rational(0);
  const Integer rr = static_cast<unsigned long>(r);
  // (k-2)! / ((r-2)! (r + 1/r - 1)) = r (k-2)! / ((r-2)! (r^2 - r + 1))
  Rational head(rr * factorial(static_cast<unsigned>(k - 2)),
                factorial(static_cast<unsigned>(r - 2)) * (rr * rr - rr + 1));
  if ((r - k) % 2 == 1) head = -head;
  return head + detail::alternating_tail(k, r - k);
}

/// Exact partial sum of the infinite alternating series with `terms` terms.
inline Rational h_inf_truncated(std::size_t k, std::size_t terms) {
  detail::require_k(k, 2, "h_inf_truncated");
  if (terms < 1) throw Error(Errc::InvalidParameter, "h_inf_truncated needs terms >= 1");
  return detail::alternating_tail(k, terms);
}

/// Number of derangements of n letters.
inline Integer derangements(std::size_t n) {
  Integer prev2 = 1;  // D_0
  if (n == 0) return prev2;
  Integer prev1 = 0;  // D_1
  for (std::size_t i = 2; i <= n; ++i) {
    Integer next = static_cast<unsigned long>(i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

/// h_inf(k) = (-1)^k (D_{k-2} - (k-2)!/e), evaluated in HighPrecision.
inline HighPrecision h_inf_float(std::size_t k) {
  detail::require_k(k, 2, "h_inf_float");
  const HighPrecision e = boost::multiprecision::exp(HighPrecision(1));
  const HighPrecision d(derangements(k - 2).str());
  const HighPrecision f(factorial(static_cast<unsigned>(k - 2)).str());
  HighPrecision value = d - f / e;
  if (k % 2 == 1) value = -value;
  return value;
}

/// 1/(k - k/(k^2+k-1)) = (k^2+k-1)/(k(k-1)(k+2)).
inline Rational h_tilde_inf(std::size_t k) {
  detail::require_k(k, 2, "h_tilde_inf");
  const Integer kk = static_cast<unsigned long>(k);
  return Rational(kk * kk + kk - 1, kk * (kk - 1) * (kk + 2));
}

/// A named size-indexed discount function h. Evaluation outside the domain throws.
class Schedule {
 public:
  using Fn = std::function<Rational(std::size_t)>;

  Schedule(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const noexcept { return name_; }
  Rational operator()(std::size_t k) const { return fn_(k); }

  static Schedule hstar() { return {"hstar", [](std::size_t k) { return h_star(k); }}; }

  static Schedule hr(std::size_t r) {
    detail::require_k(r, 2, "hr schedule (r)");
    return {"hr:" + std::to_string(r), [r](std::size_t k) { return h_r(r, k); }};
  }

  /// h_inf realized exactly as h_r for r = max_size + 8.
  static Schedule hinf_for_rank(std::size_t max_size) {
    const std::size_t r = std::max<std::size_t>(max_size, 2) + 8;
    return {"hinf", [r](std::size_t k) { return h_r(r, k); }};
  }

  static Schedule hinf_truncated(std::size_t terms) {
    if (terms < 1) throw Error(Errc::InvalidParameter, "hinf:<terms> needs terms >= 1");
    return {"hinf:" + std::to_string(terms),
            [terms](std::size_t k) { return h_inf_truncated(k, terms); }};
  }

  static Schedule htilde() { return {"htilde", [](std::size_t k) { return h_tilde_inf(k); }}; }

  static Schedule baseline() {
    return {"baseline", [](std::size_t k) {
              detail::require_k(k, 1, "baseline");
              return Rational(1, static_cast<unsigned long>(k));
            }};
  }

  static Schedule constant(const Rational& c) {
    if (c < 0 || c > 1) throw Error(Errc::InvalidParameter, "constant schedule outside [0,1]");
    return {"constant:" + to_string(c), [c](std::size_t) { return c; }};
  }

  static Schedule table(std::map<std::size_t, Rational> values, std::string name = "table") {
    for (const auto& [k, v] : values) {
      if (v < 0 || v > 1) {
        throw Error(Errc::InvalidParameter, "table value for k=" + std::to_string(k) +
                                                " outside [0,1]");
      }
    }
    return {std::move(name), [values = std::move(values)](std::size_t k) {
              auto it = values.find(k);
              if (it == values.end()) {
                throw Error(Errc::ScheduleUndefinedForSize, "table has no entry for k=" +
                                                                std::to_string(k));
              }
              return it->second;
            }};
  }

 private:
  std::string name_;
  Fn fn_;
};

/// Per-edge discount factors g(e) in (0,1].
struct DiscountProfile {
  EdgeValues g;
  std::string schedule_name;
};

/// g(e) = h(|e|) for every edge.
inline DiscountProfile make_profile(const Hypergraph& h, const Schedule& schedule) {
  DiscountProfile out{EdgeValues{}, schedule.name()};
  out.g.reserve(h.edge_count());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const std::size_t k = h.edge_size(e);
    Rational value;
    try {
      value = schedule(k);
    } catch (const Error& err) {
      throw Error(Errc::ScheduleUndefinedForSize,
                  schedule.name() + " at size " + std::to_string(k) + " (" + err.what() + ")");
    }
    if (value <= 0 || value > 1) {
      throw Error(Errc::ScheduleUndefinedForSize, schedule.name() + " gives " + to_string(value) +
                                                      " at size " + std::to_string(k) +
                                                      ", outside (0,1]");
    }
    out.g.push_back(std::move(value));
  }
  return out;
}

/// Validity conditions of a schedule at one size k:
///   A1: h(k+1) <= h(k)
///   A2: 0 <= h(k) <= h*(k)
///   A3: h(k+1) <= 1 - (k-1) h(k)
/// Slacks are the nonnegative gaps when the condition holds (negative otherwise);
/// slack_a2 is the upper gap h*(k) - h(k).
struct A123Row {
  std::size_t k;
  bool a1;
  bool a2;
  bool a3;
  Rational slack_a1;
  Rational slack_a2;
  Rational slack_a3;

  bool all() const noexcept { return a1 && a2 && a3; }
};

inline std::vector<A123Row> validate_A123(const Schedule& h, std::size_t k_max) {
  std::vector<A123Row> out;
  for (std::size_t k = 2; k <= k_max; ++k) {
    const Rational here = h(k);
    const Rational next = h(k + 1);
    A123Row row;
    row.k = k;
    row.slack_a1 = here - next;
    row.slack_a2 = h_star(k) - here;
    row.slack_a3 = 1 - static_cast<long>(k - 1) * here - next;
    row.a1 = row.slack_a1 >= 0;
    row.a2 = here >= 0 && row.slack_a2 >= 0;
    row.a3 = row.slack_a3 >= 0;
    out.push_back(std::move(row));
  }
  return out;
}

inline bool satisfies_A123(const Schedule& h, std::size_t k_max) {
  for (const auto& row : validate_A123(h, k_max)) {
    if (!row.all()) return false;
  }
  return true;
}

}  // namespace hmatch
