#pragma once

#include <cstdint>
#include <vector>

namespace gapprob {

// Random model of the odd primes: 3, 5 and 7 are always "prime", every odd
// n >= 9 independently with probability 2 / ln n.
//
// Draws are counter-based so that any n can be evaluated on its own:
//   key = splitmix64(seed),  u_n = (mix64(key + n * 0x9E3779B97F4A7C15) >> 11) * 2^-53
// where mix64 is the SplitMix64 output function. n is included iff u_n < 2 / ln n.
struct CramerSample {
    std::uint64_t limit = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> pseudo_primes;  // ascending, odd, <= limit
};

// Uniform draw in [0, 1) attached to (seed, n).
double cramer_uniform(std::uint64_t seed, std::uint64_t n) noexcept;

// Whether the model declares n prime for this seed (false for even n and 1).
bool cramer_included(std::uint64_t seed, std::uint64_t n) noexcept;

// Deterministic in (limit, seed); the worker count does not change the result.
CramerSample simulate(std::uint64_t limit, std::uint64_t seed, unsigned threads = 1);

// Probability that no odd v with a < v < b is included: prod (1 - 2 / ln v).
// Requires even a >= 8 and even b > a.
double interval_free_probability(std::uint64_t a, std::uint64_t b);

// Interval frequencies over (2 q_k, 2 q_{k+1}) for consecutive sample
// elements with 2 q_{k+1} <= limit. Vectors are indexed by h.
struct CensusEstimate {
    std::uint64_t trials = 0;               // number of intervals
    std::vector<std::uint64_t> exact;       // intervals with exactly h elements
    std::vector<std::uint64_t> at_least;    // intervals with >= h elements; one entry longer than exact
    double p_hat_A1 = 0.0;
    std::vector<double> p_hat_Ah;           // at_least[h] / trials
    std::vector<double> p_hat_exact_h;      // exact[h] / trials
    std::vector<double> se_Ah;              // binomial standard errors
    std::vector<double> se_exact_h;
};

// Requires at least three sample elements.
CensusEstimate census_on_sample(const CramerSample& s);

// |P(A_h) - P(A_1)^h| against a pooled standard error
// sqrt(se_h^2 + (h P(A_1)^(h-1) se_1)^2).
struct GeometricLawCheck {
    unsigned h = 0;
    double p_ah = 0.0;
    double p_a1_pow_h = 0.0;
    double diff = 0.0;
    double pooled_se = 0.0;
    double z = 0.0;  // diff / pooled_se
};

GeometricLawCheck check_geometric_law(const CensusEstimate& e, unsigned h);

// exact[h] == at_least[h] - at_least[h+1] for every h.
bool census_identity_holds(const CensusEstimate& e) noexcept;

}  // namespace gapprob
