#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapprob/multiplier.hpp"
#include "gapprob/prime_table.hpp"

namespace gapprob {

// b(1) = seed, b(n) = largest prime < m * b(n-1).
struct BertrandChain {
    std::uint64_t seed = 0;
    Multiplier m;
    std::vector<std::uint64_t> terms;
};

// Throws ChainStall when no prime lies in (b, m b), CoverageError when a term
// would need primes beyond the table.
BertrandChain bertrand_chain(const PrimeTable& t, std::uint64_t seed, std::uint64_t len, const Multiplier& m = {});

// Two chains meet when the largest prime below m b and below m b' coincide
// (17 -> 31 -> 61 -> 113 and 59 -> 113). From there on they are identical.
struct ChainMerge {
    std::size_t chain;  // index of the chain that ran into an existing one
    std::size_t into;   // index of the chain that already held the prime
    std::uint64_t at;   // the shared prime
};

struct SieveResult {
    Multiplier m;
    std::vector<std::uint64_t> seeds;
    // Chains extended as far as the seed search needed them; a chain stops
    // at its first shared prime.
    std::vector<BertrandChain> chains;
    std::vector<ChainMerge> merges;
    // Chains that stalled (no prime in (b, m b)) and stopped growing.
    std::uint64_t stalled = 0;
};

// Seeds p^(1) < p^(2) < ...: each is the least prime on no earlier chain.
// Chains are extended lazily until their last term reaches the candidate.
SieveResult sieve_construct(const PrimeTable& t, std::uint64_t count, const Multiplier& m = {});

// Rough table limit for sieve_construct(count); the CLI grows it on demand.
std::uint64_t sieve_horizon(std::uint64_t count, const Multiplier& m = {});

struct SeedIdentityCheck {
    bool ok = false;
    std::uint64_t count = 0;
    std::uint64_t matched = 0;  // length of the common prefix
    std::optional<std::uint64_t> first_mismatch;  // 1-based index
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint64_t> r_sequence;  // 2 followed by the R-primes
};

// Compares the first `count` seeds (m = 2) with 2 followed by the R-primes.
SeedIdentityCheck verify_seed_identity(const PrimeTable& t, std::uint64_t count);

}  // namespace gapprob
