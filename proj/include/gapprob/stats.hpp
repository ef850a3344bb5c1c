#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gapprob/gap_classify.hpp"
#include "gapprob/multiplier.hpp"
#include "gapprob/special_primes.hpp"

namespace gapprob {

// Root in (0, 1) of (1 - l) ln(1 - l) + l^2 / m = 0, with |residual| < tol.
// Bisection on [eps, 1 - eps] to width 1e-12 (or tol if smaller), then two
// Newton steps kept inside the bracket. tol must lie in [1e-15, 1).
double solve_lambda(const Multiplier& m, double tol = 1e-12);
// Real-valued m > 0; lets m = 1 be evaluated even though it is no multiplier.
double solve_lambda(double m, double tol = 1e-12);

// (1 - l) ln(1 - l) + l^2 / m, with ln(1 - l) through log1p.
double lambda_residual(double lambda, double m) noexcept;

struct ProbSet {
    Multiplier m;
    double lambda = 0.0;      // P(A_1)
    double p_S = 0.0;         // P(S_m) = P(R_m) = 1 - lambda / m
    double p_right = 0.0;     // P(R L') = P(L R') = (1 + 1/m) lambda - 1
    double p_central = 0.0;   // P(R L) = 2 - (1 + 2/m) lambda
    double p_isolated = 0.0;  // 1 - lambda
    double p_r_star = 0.0;    // P(R) P(A_1)
    double residual = 0.0;    // of the lambda equation at the returned root
    double p_r_alt = 0.0;  // 1 + ((1 - lambda) / lambda) ln(1 - lambda), equal to p_S at the root
};

ProbSet theoretical_probabilities(const Multiplier& m, double tol = 1e-12);

// Empirical frequencies from a census next to the model values.
//
// Per-prime keys (central, right, left, isolated, initial_share, R, L) are
// shares of all classified primes, so central + right + left + isolated +
// initial_share = 1. A1 and r_star are shares of intervals. ramanujan_share
// is the fraction of R-primes that are Ramanujan primes and labos_share the
// fraction of L-primes that are Labos primes, both over the range the
// sequences are complete. a1_from_r = m (1 - R).
struct DensityReport {
    Multiplier m;
    std::uint64_t limit = 0;
    std::uint64_t classified = 0;
    std::uint64_t intervals = 0;
    std::uint64_t special_range = 0;  // shares of special primes are taken over primes <= this
    std::map<std::string, double> empirical;
    ProbSet theoretical;
    std::map<std::string, double> deviations;  // |empirical - model|
};

// All inputs must share the multiplier.
DensityReport density_report(const IntervalCensus& c, const SpecialPrimeSeq& ramanujan, const SpecialPrimeSeq& labos,
                             const ProbSet& probs);

// Fraction of R-primes among the first n primes that lie in an interval
// (initial and boundary primes skipped). CoverageError if the census holds
// fewer than n such primes.
double r_fraction_of_first(const IntervalCensus& c, std::uint64_t n);

}  // namespace gapprob
