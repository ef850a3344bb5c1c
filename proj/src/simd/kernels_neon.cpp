#include "gapprob/simd/kernels.hpp"

#if defined(GAPPROB_HAVE_NEON_KERNELS)

#include <arm_neon.h>

#include <bit>

namespace gapprob::simd::neon {

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
    const std::size_t n = words.size();
    const auto* data = words.data();
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint8x16_t bytes = vreinterpretq_u8_u64(vld1q_u64(data + i));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(bytes)))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
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
        for (; i + 2 <= end; i += 2, shift += 2) {
            const uint64x2_t lt = vcltq_f64(vld1q_f64(u.data() + i), vld1q_f64(threshold.data() + i));
            word |= (vgetq_lane_u64(lt, 0) & 1u) << shift;
            word |= (vgetq_lane_u64(lt, 1) & 1u) << (shift + 1);
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
    for (; i + 2 <= n; i += 2) {
        vst1q_u64(dst.data() + i, vandq_u64(vld1q_u64(dst.data() + i), vld1q_u64(src.data() + i)));
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

}  // namespace gapprob::simd::neon

#endif
