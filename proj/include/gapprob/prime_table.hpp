#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gapprob/multiplier.hpp"

namespace gapprob {

struct BuildOptions {
    // Odd integers handled per sieve segment; rounded up to a multiple of 64.
    std::uint64_t segment_entries = std::uint64_t{1} << 18;
    // Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    // Refuse to build when the estimated footprint exceeds this many bytes.
    std::uint64_t memory_cap = std::uint64_t{4} << 30;
    bool materialize_primes = true;
};

// Immutable primality and prime-counting table over [0, limit].
//
// Storage is one bit per odd integer (bit i <-> 2i+1) plus cumulative
// set-bit counts every kBlockWords words, so pi(x) costs at most one block
// of popcounts. The table is safe to share between concurrent readers.
class PrimeTable {
public:
    static constexpr std::size_t kBlockWords = 16;

    static PrimeTable build(std::uint64_t limit, const BuildOptions& options = {});

    // Bytes the table will occupy once built, including worker buffers.
    static std::uint64_t estimate_bytes(std::uint64_t limit, const BuildOptions& options = {});

    std::uint64_t limit() const noexcept { return limit_; }
    bool has_prime_list() const noexcept { return materialized_; }

    bool is_prime(std::uint64_t x) const;

    // #{p prime : p <= x}
    std::uint64_t pi(std::uint64_t x) const;

    // The n-th prime, 1-based.
    std::uint64_t nth_prime(std::uint64_t n) const;

    // pi(x / m), with x / m compared exactly.
    std::uint64_t pi_scaled(std::uint64_t x, const Multiplier& m) const;

    // Primes p with a < p < b, ascending.
    std::vector<std::uint64_t> primes_in_open_interval(std::uint64_t a, std::uint64_t b) const;

    // pi(limit)
    std::uint64_t prime_count() const noexcept { return prime_count_; }

    // All primes <= limit; empty unless built with materialize_primes.
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }

    std::span<const std::uint64_t> odd_bits() const noexcept { return words_; }

private:
    void require_covered(std::uint64_t x, const char* what) const;
    std::uint64_t count_odd_bits_through(std::uint64_t bit) const;

    std::uint64_t limit_ = 0;
    std::uint64_t prime_count_ = 0;
    bool materialized_ = false;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> block_counts_;  // set bits in words_[0, b * kBlockWords)
    std::vector<std::uint64_t> primes_;
};

}  // namespace gapprob
