#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "scpm/graph.hpp"
#include "scpm/parallel.hpp"
#include "scpm/quasi_clique.hpp"

namespace scpm {

enum class NullModelKind { analytical, simulation };

struct NullModelConfig {
  NullModelKind kind = NullModelKind::analytical;
  std::size_t samples = 100;  // r, simulation only
  std::uint64_t seed = 0;
};

struct ExpectedCorrelation {
  double value = 0.0;
  NullModelKind kind = NullModelKind::analytical;
  double std_dev = 0.0;  // simulation only
};

/// Probability that a given other vertex lands in a random sample of `sigma`
/// vertices that already contains v: (sigma - 1) / (n - 1).
inline double sample_prob(std::size_t sigma, std::size_t n) {
  if (n < 2) throw std::invalid_argument("sample_prob: need at least two vertices");
  if (sigma < 1 || sigma > n) throw std::invalid_argument("sample_prob: support outside [1, |V|]");
  return static_cast<double>(sigma - 1) / static_cast<double>(n - 1);
}

/// Binomial probability C(alpha, beta) rho^beta (1 - rho)^(alpha - beta).
/// Exact integer coefficients up to alpha = 60, log space beyond.
inline double binomial_term(std::size_t alpha, std::size_t beta, double rho) {
  if (beta > alpha) throw std::invalid_argument("binomial_term: beta > alpha");
  if (rho <= 0.0) return beta == 0 ? 1.0 : 0.0;
  if (rho >= 1.0) return beta == alpha ? 1.0 : 0.0;
  if (alpha <= 60) {
    const std::size_t k = std::min(beta, alpha - beta);
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * (alpha - i) / (i + 1);
    return static_cast<double>(c) * std::pow(rho, static_cast<double>(beta)) *
           std::pow(1.0 - rho, static_cast<double>(alpha - beta));
  }
  const double a = static_cast<double>(alpha);
  const double b = static_cast<double>(beta);
  const double log_term = std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0) +
                          b * std::log(rho) + (a - b) * std::log1p(-rho);
  return std::exp(log_term);
}

/// Analytical upper bound on the expected structural correlation at support
/// sigma: sum over degrees alpha >= z of p(alpha) * P[Binomial(alpha, rho) >= z].
inline ExpectedCorrelation max_eps_exp(const DegreeHistogram& hist, std::size_t sigma,
                                       const QuasiCliqueParams& params, std::size_t n) {
  const double rho = sample_prob(sigma, n);
  const std::size_t z = params.member_degree_floor();
  double total = 0.0;
  for (std::size_t alpha = z; alpha <= hist.max_degree(); ++alpha) {
    if (hist.count(alpha) == 0) continue;
    double tail = 0.0;
    for (std::size_t beta = z; beta <= alpha; ++beta) tail += binomial_term(alpha, beta, rho);
    total += hist.probability(alpha) * tail;
  }
  return {std::clamp(total, 0.0, 1.0), NullModelKind::analytical, 0.0};
}

/// Pairwise (cascade) summation; result depends only on the order of `values`.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (auto v : values) s += v;
    return s;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream per (sigma, trial) so results ignore evaluation order.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t sigma, std::size_t trial) {
  return seed ^ splitmix64(splitmix64(sigma) ^ (static_cast<std::uint64_t>(trial) * 0xD1B54A32D192ED03ULL));
}

}  // namespace detail

struct SimulationOptions {
  unsigned threads = 1;
  SearchStrategy strategy = SearchStrategy::depth_first;
  SearchOptions search;
};

/// Monte-Carlo estimate: mean over r samples of |K| / sigma, each sample being
/// sigma vertices drawn uniformly without replacement.
inline ExpectedCorrelation sim_eps_exp(const AttributedGraph& g, std::size_t sigma,
                                       const QuasiCliqueParams& params, const NullModelConfig& cfg,
                                       const SimulationOptions& options = {}) {
  const std::size_t n = g.vertex_count();
  if (sigma < 1 || sigma > n) throw std::invalid_argument("sim_eps_exp: support outside [1, |V|]");
  if (cfg.samples < 1) throw std::invalid_argument("sim_eps_exp: need at least one sample");
  if (sigma < params.min_size) return {0.0, NullModelKind::simulation, 0.0};

  std::vector<double> trials(cfg.samples, 0.0);
  std::vector<std::uint64_t> counters(cfg.samples, 0);
  parallel_for(cfg.samples, options.threads, [&](std::size_t t) {
    std::mt19937_64 rng(detail::trial_seed(cfg.seed, sigma, t));
    std::vector<VertexId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < sigma; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(sigma);
    std::sort(pool.begin(), pool.end());
    SearchOptions search = options.search;
    search.candidate_counter = &counters[t];
    const auto covered = covered_vertices(induced_view(g, pool), params, options.strategy, search);
    trials[t] = static_cast<double>(covered.size()) / static_cast<double>(sigma);
  });
  if (options.search.candidate_counter)
    for (auto c : counters) *options.search.candidate_counter += c;

  // Shifted by the first trial so identical samples give an exact mean and zero spread.
  const double r = static_cast<double>(trials.size());
  const double shift = trials.front();
  std::vector<double> d(trials.size()), sq(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    d[i] = trials[i] - shift;
    sq[i] = d[i] * d[i];
  }
  const double sum_d = pairwise_sum(d);
  const double mean = shift + sum_d / r;
  double std_dev = 0.0;
  if (trials.size() > 1)
    std_dev = std::sqrt(std::max(0.0, (pairwise_sum(sq) - sum_d * sum_d / r) / (r - 1.0)));
  return {std::clamp(mean, 0.0, 1.0), NullModelKind::simulation, std_dev};
}

/// delta = eps / eps_exp. A positive eps over a zero expectation is infinitely
/// significant (+inf); 0 / 0 is 0.
inline double normalized_delta(double eps, const ExpectedCorrelation& expected) {
  if (expected.value <= 0.0) return eps > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return eps / expected.value;
}

/// Memoized expected correlation keyed by support, for one graph and one set of
/// quasi-clique parameters. Safe to query from several threads.
class ExpectedCorrelationModel {
 public:
  ExpectedCorrelationModel(const AttributedGraph& g, QuasiCliqueParams params, NullModelConfig cfg,
                           SimulationOptions sim = {})
      : g_(g), params_(params), cfg_(cfg), sim_(sim), hist_(degree_distribution(g)) {
    sim_.search.candidate_counter = nullptr;
  }

  const NullModelConfig& config() const noexcept { return cfg_; }
  const DegreeHistogram& histogram() const noexcept { return hist_; }

  ExpectedCorrelation at(std::size_t sigma) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(sigma); it != cache_.end()) return it->second;
    }
    ExpectedCorrelation value = compute(sigma);
    std::lock_guard lock(mutex_);
    return cache_.emplace(sigma, value).first->second;
  }

 private:
  ExpectedCorrelation compute(std::size_t sigma) const {
    const std::size_t n = g_.vertex_count();
    if (n < 2 || sigma < 1) return {0.0, cfg_.kind, 0.0};
    sigma = std::min(sigma, n);
    if (cfg_.kind == NullModelKind::analytical) return max_eps_exp(hist_, sigma, params_, n);
    return sim_eps_exp(g_, sigma, params_, cfg_, sim_);
  }

  const AttributedGraph& g_;
  QuasiCliqueParams params_;
  NullModelConfig cfg_;
  SimulationOptions sim_;
  DegreeHistogram hist_;
  std::mutex mutex_;
  std::map<std::size_t, ExpectedCorrelation> cache_;
};

}  // namespace scpm
