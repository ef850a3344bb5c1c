#include <bit>

#include "gapprob/simd/kernels.hpp"

namespace gapprob::simd::scalar {

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
    std::uint64_t total = 0;
    for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept {
    for (auto& w : bits) w = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < threshold[i]) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
}

void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

}  // namespace gapprob::simd::scalar
