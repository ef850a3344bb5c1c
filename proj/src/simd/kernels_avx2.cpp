// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "gapprob/simd/kernels.hpp"

namespace gapprob::simd::avx2 {

namespace {

// Per-byte popcount by nibble lookup, summed into four 64-bit lanes.
inline __m256i popcount_bytes_sad(__m256i v) noexcept {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) noexcept {
    const __m128i s = _mm_add_epi64(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s)) + static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
    const std::size_t n = words.size();
    const auto* data = words.data();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
        acc = _mm256_add_epi64(acc, popcount_bytes_sad(v));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(data[i]));
    return total;
}

void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept {
    const std::size_t n = u.size();
    std::size_t i = 0;
    for (std::size_t w = 0; w < bits.size(); ++w) {
        std::uint64_t word = 0;
        const std::size_t end = (w + 1) * 64 < n ? (w + 1) * 64 : n;
        std::size_t shift = 0;
        for (; i + 4 <= end; i += 4, shift += 4) {
            const __m256d a = _mm256_loadu_pd(u.data() + i);
            const __m256d t = _mm256_loadu_pd(threshold.data() + i);
            const int m = _mm256_movemask_pd(_mm256_cmp_pd(a, t, _CMP_LT_OQ));
            word |= static_cast<std::uint64_t>(m) << shift;
        }
        for (; i < end; ++i, ++shift) {
            if (u[i] < threshold[i]) word |= std::uint64_t{1} << shift;
        }
        bits[w] = word;
    }
}

void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept {
    const std::size_t n = dst.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
        const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
        _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

}  // namespace gapprob::simd::avx2
