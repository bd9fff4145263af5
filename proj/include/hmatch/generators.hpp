#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/rational.hpp"

namespace hmatch::gen {

/// Fano plane: 7 points, 7 lines of 3 points, any two lines meet in one point.
inline Hypergraph fano() {
  return Hypergraph::build(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Projective plane of prime order p: points and lines are the 1-dimensional
/// subspaces of GF(p)^3, normalized so the first nonzero coordinate is 1; a point
/// lies on a line when their dot product vanishes mod p.
inline Hypergraph projective_plane(std::size_t p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p > 13) throw Error(Errc::TooLarge, "order " + std::to_string(p) + " > 13");
  std::vector<std::array<std::size_t, 3>> reps;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      reps.push_back({1, a, b});
    }
  }
  for (std::size_t b = 0; b < p; ++b) reps.push_back({0, 1, b});
  reps.push_back({0, 0, 1});
  std::vector<std::vector<std::size_t>> lines;
  for (const auto& line : reps) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& pt = reps[i];
      if ((pt[0] * line[0] + pt[1] * line[1] + pt[2] * line[2]) % p == 0) pts.push_back(i);
    }
    lines.push_back(std::move(pts));
  }
  return Hypergraph::build(reps.size(), std::move(lines));
}

inline Hypergraph triangle() { return Hypergraph::build(3, {{0, 1}, {1, 2}, {0, 2}}); }

/// Path of m 2-edges {i, i+1}.
inline Hypergraph path(std::size_t m) {
  std::vector<std::vector<std::size_t>> edges;
  for (std::size_t i = 0; i < m; ++i) edges.push_back({i, i + 1});
  return Hypergraph::build(m + 1, std::move(edges));
}

/// m pairwise disjoint edges of size k.
inline Hypergraph disjoint(std::size_t m, std::size_t k) {
  if (k < 1) throw Error(Errc::InvalidParameter, "edge size must be >= 1");
  std::vector<std::vector<std::size_t>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> e;
    for (std::size_t j = 0; j < k; ++j) e.push_back(i * k + j);
    edges.push_back(std::move(e));
  }
  return Hypergraph::build(m * k, std::move(edges));
}

/// Deterministic stream on top of mt19937_64 with an unbiased bounded draw, so a
/// seed yields the same instance on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  /// num/den with den in [1,16] and value in [0,4].
  Rational weight() {
    const std::uint64_t den = 1 + below(16);
    const std::uint64_t num = below(4 * den + 1);
    return Rational(Integer(num), Integer(den));
  }

 private:
  std::mt19937_64 engine_;
};

inline Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= static_cast<unsigned long>(n - i);
    out /= static_cast<unsigned long>(i + 1);
  }
  return out;
}

namespace detail {

constexpr std::size_t kMaxVertices = 64;
constexpr std::size_t kMaxEdges = 256;

inline void check_caps(std::size_t n, std::size_t m) {
  if (n > kMaxVertices || m > kMaxEdges) {
    throw Error(Errc::InvalidParameter, "generator caps are n <= 64 and m <= 256");
  }
}

}  // namespace detail

/// m distinct random edges; each edge picks a size uniformly among sizes in
/// [size_min, size_max] that still have unused subsets, then a uniform subset.
inline WeightedInstance random_hypergraph(std::size_t n, std::size_t m, std::size_t size_min,
                                          std::size_t size_max, std::uint64_t seed) {
  detail::check_caps(n, m);
  if (size_min < 2 || size_max > 6 || size_min > size_max) {
    throw Error(Errc::InvalidParameter, "edge sizes must satisfy 2 <= min <= max <= 6");
  }
  std::vector<Integer> capacity;
  Integer total = 0;
  for (std::size_t s = size_min; s <= size_max; ++s) {
    capacity.push_back(binomial(n, s));
    total += capacity.back();
  }
  if (total < m) {
    throw Error(Errc::Unsatisfiable, std::to_string(m) + " edges requested but only " +
                                         total.str() + " distinct edges exist");
  }
  Rng rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> edges;
  std::vector<Integer> used(capacity.size(), 0);
  while (edges.size() < m) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < capacity.size(); ++i) {
      if (used[i] < capacity[i]) open.push_back(i);
    }
    const std::size_t slot = open[rng.below(open.size())];
    auto e = rng.subset(n, size_min + slot);
    if (seen.insert(e).second) {
      ++used[slot];
      edges.push_back(std::move(e));
    }
  }
  EdgeValues w;
  for (std::size_t i = 0; i < m; ++i) w.push_back(rng.weight());
  return WeightedInstance::make(Hypergraph::build(n, std::move(edges)), std::move(w));
}

/// m_k distinct k-edges followed by m_l distinct l-edges.
inline WeightedInstance biuniform_random(std::size_t n, std::size_t m_k, std::size_t m_l,
                                         std::size_t k, std::size_t l, std::uint64_t seed) {
  detail::check_caps(n, m_k + m_l);
  if (k < 2 || l <= k || l > 6) {
    throw Error(Errc::InvalidParameter, "need 2 <= k < l <= 6");
  }
  if (binomial(n, k) < m_k || binomial(n, l) < m_l) {
    throw Error(Errc::Unsatisfiable, "not enough distinct edges of the requested sizes");
  }
  Rng rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> edges;
  for (const auto& [size, count] : {std::pair{k, m_k}, std::pair{l, m_l}}) {
    std::size_t made = 0;
    while (made < count) {
      auto e = rng.subset(n, size);
      if (seen.insert(e).second) {
        edges.push_back(std::move(e));
        ++made;
      }
    }
  }
  EdgeValues w;
  for (std::size_t i = 0; i < edges.size(); ++i) w.push_back(rng.weight());
  return WeightedInstance::make(Hypergraph::build(n, std::move(edges)), std::move(w));
}

enum class Kind { Fano, ProjectivePlane, Random, BiUniform, Triangle, Path, Disjoint };

/// Parameters for one generated instance. Only the fields used by `kind` matter.
struct GenSpec {
  Kind kind = Kind::Fano;
  std::size_t order = 2;  // projective plane
  std::size_t n = 0;      // random, biuniform
  std::size_t m = 0;      // random, path, disjoint
  std::size_t size_min = 2;
  std::size_t size_max = 3;
  std::size_t m_k = 0;    // biuniform
  std::size_t m_l = 0;
  std::size_t k = 2;      // biuniform, disjoint
  std::size_t l = 3;
  std::uint64_t seed = 0;
};

/// Structured kinds carry unit weights; random kinds draw weights from the seed.
inline WeightedInstance generate(const GenSpec& request) {
  switch (request.kind) {
    case Kind::Fano: return WeightedInstance::unit(fano());
    case Kind::ProjectivePlane: return WeightedInstance::unit(projective_plane(request.order));
    case Kind::Random: return random_hypergraph(request.n, request.m, request.size_min, request.size_max, request.seed);
    case Kind::BiUniform: return biuniform_random(request.n, request.m_k, request.m_l, request.k, request.l, request.seed);
    case Kind::Triangle: return WeightedInstance::unit(triangle());
    case Kind::Path: return WeightedInstance::unit(path(request.m));
    case Kind::Disjoint: return WeightedInstance::unit(disjoint(request.m, request.k));
  }
  throw Error(Errc::InvalidParameter, "unknown generator kind");
}

}  // namespace hmatch::gen
