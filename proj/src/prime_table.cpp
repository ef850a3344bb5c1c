#include "gapprob/prime_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "gapprob/error.hpp"
#include "gapprob/simd/kernels.hpp"

namespace gapprob {

namespace {

// Odd primes removed by the two periodic presieve patterns. Each pattern is
// periodic in bits with period = product of its primes, hence periodic in
// 64-bit words with the same period counted in words.
constexpr std::uint64_t kPresieveA[] = {3, 5, 7, 11, 13};
constexpr std::uint64_t kPresieveB[] = {17, 19, 23};
constexpr std::uint64_t kLastPresieved = 23;

template <std::size_t N>
std::vector<std::uint64_t> presieve_pattern(const std::uint64_t (&ps)[N]) {
    std::uint64_t period = 1;
    for (auto p : ps) period *= p;
    std::vector<std::uint64_t> words(period, ~std::uint64_t{0});
    for (auto p : ps) {
        // bit j <-> 2j+1; odd multiples of p sit at j = (p-1)/2 + k*p.
        for (std::uint64_t j = (p - 1) / 2; j < period * 64; j += p) {
            words[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
        }
    }
    return words;
}

// dst[i] = pattern[(start + i) mod pattern.size()]
void copy_cyclic(std::span<std::uint64_t> dst, std::span<const std::uint64_t> pattern, std::uint64_t start) {
    std::size_t pos = start % pattern.size();
    std::size_t done = 0;
    while (done < dst.size()) {
        const std::size_t run = std::min(dst.size() - done, pattern.size() - pos);
        std::copy_n(pattern.begin() + pos, run, dst.begin() + done);
        done += run;
        pos = 0;
    }
}

void and_cyclic(std::span<std::uint64_t> dst, std::span<const std::uint64_t> pattern, std::uint64_t start) {
    std::size_t pos = start % pattern.size();
    std::size_t done = 0;
    while (done < dst.size()) {
        const std::size_t run = std::min(dst.size() - done, pattern.size() - pos);
        simd::and_assign(dst.subspan(done, run), pattern.subspan(pos, run));
        done += run;
        pos = 0;
    }
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> base_primes_through(std::uint64_t n) {
    std::vector<char> composite(n + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 3; i <= n; i += 2) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += 2 * i) composite[j] = 1;
    }
    return out;
}

struct SieveContext {
    std::span<std::uint64_t> words;
    std::uint64_t total_bits;
    std::uint64_t segment_words;
    std::span<const std::uint64_t> pattern_a;
    std::span<const std::uint64_t> pattern_b;
    std::span<const std::uint64_t> base_primes;
};

void sieve_segment(const SieveContext& ctx, std::uint64_t segment) {
    const std::uint64_t w0 = segment * ctx.segment_words;
    const std::uint64_t w1 = std::min<std::uint64_t>(w0 + ctx.segment_words, ctx.words.size());
    auto seg = ctx.words.subspan(w0, w1 - w0);
    copy_cyclic(seg, ctx.pattern_a, w0);
    and_cyclic(seg, ctx.pattern_b, w0);

    const std::uint64_t lo_bit = w0 * 64;
    const std::uint64_t hi_bit = std::min(w1 * 64, ctx.total_bits);
    if (lo_bit == 0) {
        seg[0] &= ~std::uint64_t{1};  // 1 is not prime
        for (auto p : kPresieveA) seg[0] |= std::uint64_t{1} << ((p - 1) / 2);
        for (auto p : kPresieveB) seg[0] |= std::uint64_t{1} << ((p - 1) / 2);
    }
    for (std::uint64_t p : ctx.base_primes) {
        if (p <= kLastPresieved) continue;
        const std::uint64_t sq_bit = (p * p - 1) / 2;
        if (sq_bit >= hi_bit) break;
        std::uint64_t j;
        if (sq_bit >= lo_bit) {
            j = sq_bit;
        } else {
            // smallest j >= lo_bit with 2j+1 = 0 mod p, i.e. j = (p-1)/2 mod p
            const std::uint64_t r = (p - 1) / 2;
            j = lo_bit + ((r + p - lo_bit % p) % p);
        }
        for (; j < hi_bit; j += p) ctx.words[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
    }
    if (hi_bit < w1 * 64) {
        // clear bits past limit in the final word
        const std::uint64_t keep = hi_bit & 63;
        if (keep != 0) ctx.words[w1 - 1] &= (std::uint64_t{1} << keep) - 1;
    }
}

}  // namespace

std::uint64_t PrimeTable::estimate_bytes(std::uint64_t limit, const BuildOptions& options) {
    const std::uint64_t bits = limit / 2 + 1;
    const std::uint64_t words = (bits + 63) / 64;
    std::uint64_t bytes = words * 8 + (words / kBlockWords + 2) * 8;
    bytes += (15015 + 7429) * 8;
    if (options.materialize_primes && limit >= 17) {
        // Rosser-Schoenfeld: pi(x) < 1.25506 x / ln x for x > 1
        const double x = static_cast<double>(limit);
        bytes += static_cast<std::uint64_t>(1.25506 * x / std::log(x) + 1) * 8;
    } else if (options.materialize_primes) {
        bytes += 8 * 8;
    }
    return bytes;
}

PrimeTable PrimeTable::build(std::uint64_t limit, const BuildOptions& options) {
    if (limit < 2) throw InvalidArgument("build_table: limit must be >= 2, got " + std::to_string(limit));
    if (limit > (std::uint64_t{1} << 62)) throw InvalidArgument("build_table: limit too large");
    const std::uint64_t need = estimate_bytes(limit, options);
    if (options.memory_cap != 0 && need > options.memory_cap) {
        throw ResourceError("build_table: limit " + std::to_string(limit) + " requires " + std::to_string(need) +
                                " bytes, above the memory cap of " + std::to_string(options.memory_cap),
                            need);
    }

    PrimeTable t;
    t.limit_ = limit;
    const std::uint64_t total_bits = (limit - 1) / 2 + 1;  // odd integers 1, 3, ..., <= limit
    t.words_.assign((total_bits + 63) / 64, 0);

    const auto pattern_a = presieve_pattern(kPresieveA);
    const auto pattern_b = presieve_pattern(kPresieveB);
    const auto base = base_primes_through(isqrt(limit));

    const std::uint64_t seg_words = std::max<std::uint64_t>(1, (options.segment_entries + 63) / 64);
    const std::uint64_t segments = (t.words_.size() + seg_words - 1) / seg_words;
    const SieveContext ctx{t.words_, total_bits, seg_words, pattern_a, pattern_b, base};

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, segments));
    if (threads <= 1) {
        for (std::uint64_t s = 0; s < segments; ++s) sieve_segment(ctx, s);
    } else {
        // Segments own disjoint word ranges, so workers never share a word.
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&ctx, w, threads, segments] {
                for (std::uint64_t s = w; s < segments; s += threads) sieve_segment(ctx, s);
            });
        }
    }

    const std::size_t blocks = (t.words_.size() + kBlockWords - 1) / kBlockWords;
    std::vector<std::uint32_t> per_block(blocks);
    simd::block_popcounts(t.words_, kBlockWords, per_block);
    t.block_counts_.resize(blocks + 1);
    t.block_counts_[0] = 0;
    for (std::size_t b = 0; b < blocks; ++b) t.block_counts_[b + 1] = t.block_counts_[b] + per_block[b];
    t.prime_count_ = t.block_counts_.back() + 1;  // plus the prime 2

    if (options.materialize_primes) {
        t.materialized_ = true;
        t.primes_.reserve(t.prime_count_);
        t.primes_.push_back(2);
        for (std::size_t w = 0; w < t.words_.size(); ++w) {
            for (std::uint64_t bits = t.words_[w]; bits != 0; bits &= bits - 1) {
                t.primes_.push_back(2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits))) + 1);
            }
        }
    }
    return t;
}

void PrimeTable::require_covered(std::uint64_t x, const char* what) const {
    if (x > limit_) {
        throw CoverageError(std::string(what) + ": " + std::to_string(x) + " exceeds table limit " +
                                std::to_string(limit_),
                            x);
    }
}

bool PrimeTable::is_prime(std::uint64_t x) const {
    require_covered(x, "is_prime");
    if (x < 3) return x == 2;
    if (x % 2 == 0) return false;
    const std::uint64_t j = (x - 1) / 2;
    return (words_[j >> 6] >> (j & 63)) & 1;
}

std::uint64_t PrimeTable::count_odd_bits_through(std::uint64_t bit) const {
    const std::uint64_t w = bit >> 6;
    const std::uint64_t b = w / kBlockWords;
    std::uint64_t count = block_counts_[b];
    count += simd::popcount(std::span(words_).subspan(b * kBlockWords, w - b * kBlockWords));
    const std::uint64_t shift = bit & 63;
    const std::uint64_t mask = shift == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (shift + 1)) - 1;
    return count + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    require_covered(x, "prime_pi");
    if (x < 2) return 0;
    return 1 + count_odd_bits_through((x - 1) / 2);
}

std::uint64_t PrimeTable::nth_prime(std::uint64_t n) const {
    if (n == 0 || n > prime_count_) {
        throw CoverageError("nth_prime: index " + std::to_string(n) + " outside [1, " +
                                std::to_string(prime_count_) + "]",
                            n);
    }
    if (materialized_) return primes_[n - 1];
    if (n == 1) return 2;
    const std::uint64_t target = n - 1;  // rank among odd primes
    // last block whose prefix count is below target
    auto it = std::lower_bound(block_counts_.begin(), block_counts_.end(), target);
    const std::size_t b = static_cast<std::size_t>(it - block_counts_.begin()) - 1;
    std::uint64_t seen = block_counts_[b];
    for (std::size_t w = b * kBlockWords; w < words_.size(); ++w) {
        const auto c = static_cast<std::uint64_t>(std::popcount(words_[w]));
        if (seen + c >= target) {
            std::uint64_t bits = words_[w];
            for (std::uint64_t k = seen + 1; k < target; ++k) bits &= bits - 1;
            return 2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits))) + 1;
        }
        seen += c;
    }
    throw CoverageError("nth_prime: index out of range", n);  // unreachable with consistent counts
}

std::uint64_t PrimeTable::pi_scaled(std::uint64_t x, const Multiplier& m) const {
    const u128 y = m.floor_div(x);
    if (y > limit_) {
        throw CoverageError("pi_scaled: " + std::to_string(x) + "/" + m.str() + " exceeds table limit " +
                                std::to_string(limit_),
                            static_cast<std::uint64_t>(y));
    }
    return pi(static_cast<std::uint64_t>(y));
}

std::vector<std::uint64_t> PrimeTable::primes_in_open_interval(std::uint64_t a, std::uint64_t b) const {
    if (a > b) throw InvalidArgument("primes_in_open_interval: a > b");
    require_covered(b, "primes_in_open_interval");
    std::vector<std::uint64_t> out;
    if (b <= a + 1) return out;
    if (materialized_) {
        auto lo = std::upper_bound(primes_.begin(), primes_.end(), a);
        auto hi = std::lower_bound(lo, primes_.end(), b);
        out.assign(lo, hi);
        return out;
    }
    if (a < 2 && b > 2) out.push_back(2);
    for (std::uint64_t v = std::max<std::uint64_t>(3, a + 1) | 1; v < b; v += 2) {
        if (is_prime(v)) out.push_back(v);
    }
    return out;
}

}  // namespace gapprob
