#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/rational.hpp"

namespace hmatch {

/// Pr[e in M] for the exponential-clock sampler on the line graph:
/// lambda(e) / (lambda(e) + sum_{f in N(e)} lambda(f)), or 0 when lambda(e) = 0.
inline Rational exact_inclusion_probability(const Hypergraph& h, const EdgeValues& lambda,
                                            std::size_t e) {
  check_size(h, lambda, "lambda");
  const auto& nbrs = h.neighborhood(e);
  if (lambda[e] <= 0) return Rational(0);
  Rational total = lambda[e];
  for (std::size_t f : nbrs) total += lambda[f];
  return lambda[e] / total;
}

/// Lower bound x(e) / (|e| - (|e|-1) x(e)) on the inclusion probability with lambda = x.
inline Rational degree_bound(const Hypergraph& h, const EdgeValues& x, std::size_t e) {
  const Rational k = static_cast<unsigned long>(h.edge_size(e));
  return x[e] / (k - (k - 1) * x[e]);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform in (0,1), a pure function of (seed, counter).
inline double uniform_open(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(seed ^ splitmix64(counter + 0x632BE59BD9B4E019ULL));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// Seed for the i-th draw of a batch started from `seed`.
inline std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t i) {
  return detail::splitmix64(seed + detail::splitmix64(i));
}

/// Exponential-clock sampler: every edge with positive rate draws X_e ~ Exp(lambda(e))
/// and enters M when its clock beats every positive-rate neighbor. Equal clocks are
/// ordered by edge index.
class ClockSampler {
 public:
  ClockSampler(const Hypergraph& h, const EdgeValues& lambda) : graph_(&h) {
    check_size(h, lambda, "lambda");
    rates_.reserve(lambda.size());
    bool any = false;
    for (const auto& l : lambda) {
      if (l < 0) throw Error(Errc::InvalidParameter, "negative clock rate");
      rates_.push_back(to_double(l));
      any = any || l > 0;
    }
    if (!any) throw Error(Errc::AllRatesZero, "no edge has a positive rate");
    clocks_.resize(lambda.size());
  }

  Matching sample(std::uint64_t seed) {
    const std::size_t m = rates_.size();
    for (std::size_t e = 0; e < m; ++e) {
      clocks_[e] = rates_[e] > 0 ? -std::log(detail::uniform_open(seed, e)) / rates_[e]
                                 : std::numeric_limits<double>::infinity();
    }
    Matching out;
    for (std::size_t e = 0; e < m; ++e) {
      if (rates_[e] <= 0) continue;
      bool wins = true;
      for (std::size_t f : graph_->neighborhood(e)) {
        if (rates_[f] <= 0) continue;
        if (clocks_[f] < clocks_[e] || (clocks_[f] == clocks_[e] && f < e)) {
          wins = false;
          break;
        }
      }
      if (wins) out.push_back(e);
    }
    return out;
  }

 private:
  const Hypergraph* graph_;
  std::vector<double> rates_;
  std::vector<double> clocks_;
};

inline Matching sample_matching(const Hypergraph& h, const EdgeValues& lambda, std::uint64_t seed) {
  ClockSampler sampler(h, lambda);
  return sampler.sample(seed);
}

/// Runs `samples` draws (seeds batch_seed(seed, i)) across `jobs` threads and calls
/// `visit(shard, matching)`; shards are contiguous index ranges, so per-shard
/// accumulators merged in order give a result independent of `jobs`.
template <class Visit>
void for_each_sample(const Hypergraph& h, const EdgeValues& lambda, std::size_t samples,
                     std::uint64_t seed, std::size_t jobs, Visit&& visit) {
  jobs = std::max<std::size_t>(1, std::min(jobs, std::max<std::size_t>(samples, 1)));
  auto run_shard = [&](std::size_t shard) {
    ClockSampler sampler(h, lambda);
    const std::size_t begin = samples * shard / jobs;
    const std::size_t end = samples * (shard + 1) / jobs;
    for (std::size_t i = begin; i < end; ++i) visit(shard, sampler.sample(batch_seed(seed, i)));
  };
  if (jobs == 1) {
    run_shard(0);
    return;
  }
  std::vector<std::thread> workers;
  for (std::size_t s = 0; s < jobs; ++s) workers.emplace_back(run_shard, s);
  for (auto& t : workers) t.join();
}

/// Empirical inclusion frequency per edge over `samples` draws.
inline std::vector<double> empirical_frequencies(const Hypergraph& h, const EdgeValues& lambda,
                                                 std::size_t samples, std::uint64_t seed,
                                                 std::size_t jobs = 1) {
  jobs = std::max<std::size_t>(1, jobs);
  std::vector<std::vector<std::uint64_t>> counts(jobs,
                                                 std::vector<std::uint64_t>(h.edge_count(), 0));
  for_each_sample(h, lambda, samples, seed, jobs, [&](std::size_t shard, const Matching& m) {
    for (std::size_t e : m) ++counts[shard][e];
  });
  std::vector<double> freq(h.edge_count(), 0.0);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[e];
    freq[e] = samples ? static_cast<double>(total) / static_cast<double>(samples) : 0.0;
  }
  return freq;
}

/// (observed - p) / sqrt(p (1 - p) / n); 0 or +inf when p is 0 or 1.
inline double binomial_z(double observed, double p, std::size_t n) {
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  if (sigma == 0.0) {
    return observed == p ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (observed - p) / sigma;
}

struct InclusionRow {
  std::size_t edge;
  Rational x;
  Rational exact;   // clock-sampler probability with lambda = x
  Rational bound;   // x / (|e| - (|e|-1) x)
  bool holds;       // exact >= bound
  double empirical;
  double z;
};

/// Compares, for every edge with x(e) > 0, the closed-form inclusion probability of
/// the sampler run with lambda = x against the degree bound and against `samples`
/// seeded draws.
inline std::vector<InclusionRow> check_inclusion_bounds(const Hypergraph& h, const EdgeValues& x,
                                                    std::size_t samples, std::uint64_t seed,
                                                    std::size_t jobs = 1) {
  check_size(h, x, "x");
  std::vector<double> freq(h.edge_count(), 0.0);
  const bool any = std::any_of(x.begin(), x.end(), [](const Rational& v) { return v > 0; });
  if (any && samples > 0) freq = empirical_frequencies(h, x, samples, seed, jobs);
  std::vector<InclusionRow> rows;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (x[e] <= 0) continue;
    InclusionRow row{e, x[e], exact_inclusion_probability(h, x, e), degree_bound(h, x, e),
                     false, freq[e], 0.0};
    row.holds = row.exact >= row.bound;
    row.z = samples ? binomial_z(row.empirical, to_double(row.exact), samples) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct SampleMean {
  double mean;
  double std_error;
};

/// Mean and standard error of statistic(M) over seeded draws.
inline SampleMean estimate_mean(const Hypergraph& h, const EdgeValues& lambda, std::size_t samples,
                                std::uint64_t seed,
                                const std::function<double(const Matching&)>& statistic) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for_each_sample(h, lambda, samples, seed, 1, [&](std::size_t, const Matching& m) {
    const double v = statistic(m);
    sum += v;
    sum_sq += v * v;
  });
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

}  // namespace hmatch
