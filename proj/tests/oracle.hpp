#pragma once

// Reference implementations used only by tests. They share no code with the
// library and favour obviousness over speed.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Plain byte-per-integer sieve of Eratosthenes.
inline std::vector<bool> simple_sieve(std::uint64_t n) {
    std::vector<bool> is_prime(n + 1, true);
    is_prime[0] = false;
    if (n >= 1) is_prime[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!is_prime[i]) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) is_prime[j] = false;
    }
    return is_prime;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    const auto s = simple_sieve(n);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (s[i]) out.push_back(i);
    }
    return out;
}

// prefix[x] = number of primes <= x
inline std::vector<std::uint64_t> prime_pi_table(std::uint64_t n) {
    const auto s = simple_sieve(n);
    std::vector<std::uint64_t> pi(n + 1, 0);
    for (std::uint64_t i = 1; i <= n; ++i) pi[i] = pi[i - 1] + (s[i] ? 1 : 0);
    return pi;
}

}  // namespace oracle
