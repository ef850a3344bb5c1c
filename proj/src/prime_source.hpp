#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gapprob/prime_table.hpp"

namespace gapprob::detail {

// Upper bound for the k-th prime: p_k < k (ln k + ln ln k) for k >= 6 (Rosser).
inline std::uint64_t nth_prime_upper(std::uint64_t k) {
    constexpr std::uint64_t small[] = {2, 2, 3, 5, 7, 11};
    if (k < 6) return small[k];
    const double x = static_cast<double>(k);
    return static_cast<std::uint64_t>(std::ceil(x * (std::log(x) + std::log(std::log(x)))));
}

// Ascending primes of a table, borrowed when the table materialized them and
// extracted from the bit store otherwise.
class PrimeSource {
public:
    explicit PrimeSource(const PrimeTable& t) {
        if (t.has_prime_list()) {
            view_ = t.primes();
            return;
        }
        owned_.reserve(t.prime_count());
        owned_.push_back(2);
        const auto words = t.odd_bits();
        for (std::size_t w = 0; w < words.size(); ++w) {
            for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
                owned_.push_back(2 * (w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits))) + 1);
            }
        }
        view_ = owned_;
    }
    PrimeSource(const PrimeSource&) = delete;
    PrimeSource& operator=(const PrimeSource&) = delete;

    std::span<const std::uint64_t> primes() const noexcept { return view_; }

private:
    std::vector<std::uint64_t> owned_;
    std::span<const std::uint64_t> view_;
};

}  // namespace gapprob::detail
