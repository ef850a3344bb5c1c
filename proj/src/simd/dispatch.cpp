#include <algorithm>
#include <atomic>

#include "gapprob/simd/kernels.hpp"

namespace gapprob::simd {

namespace {

Isa detect() noexcept {
#if defined(GAPPROB_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(GAPPROB_HAVE_NEON_KERNELS)
    return Isa::neon;
#endif
    return Isa::scalar;
}

std::atomic<Isa>& active_slot() noexcept {
    static std::atomic<Isa> slot{detected_isa()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
        case Isa::scalar: break;
    }
    return "scalar";
}

Isa detected_isa() noexcept {
    static const Isa isa = detect();
    return isa;
}

bool isa_available(Isa isa) noexcept {
    if (isa == Isa::scalar) return true;
    return isa == detected_isa();
}

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) noexcept {
    if (!isa_available(isa)) isa = Isa::scalar;
    return active_slot().exchange(isa, std::memory_order_relaxed);
}

std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept {
    switch (active_isa()) {
#if defined(GAPPROB_HAVE_AVX2_KERNELS)
        case Isa::avx2: return avx2::popcount(words);
#endif
#if defined(GAPPROB_HAVE_NEON_KERNELS)
        case Isa::neon: return neon::popcount(words);
#endif
        default: return scalar::popcount(words);
    }
}

void block_popcounts(std::span<const std::uint64_t> words, std::size_t block, std::span<std::uint32_t> out) noexcept {
    for (std::size_t b = 0; b < out.size(); ++b) {
        const std::size_t begin = b * block;
        const std::size_t len = std::min(block, words.size() - begin);
        out[b] = static_cast<std::uint32_t>(popcount(words.subspan(begin, len)));
    }
}

void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept {
    switch (active_isa()) {
#if defined(GAPPROB_HAVE_AVX2_KERNELS)
        case Isa::avx2: return avx2::below_threshold_mask(u, threshold, bits);
#endif
#if defined(GAPPROB_HAVE_NEON_KERNELS)
        case Isa::neon: return neon::below_threshold_mask(u, threshold, bits);
#endif
        default: return scalar::below_threshold_mask(u, threshold, bits);
    }
}

void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept {
    switch (active_isa()) {
#if defined(GAPPROB_HAVE_AVX2_KERNELS)
        case Isa::avx2: return avx2::and_assign(dst, src);
#endif
#if defined(GAPPROB_HAVE_NEON_KERNELS)
        case Isa::neon: return neon::and_assign(dst, src);
#endif
        default: return scalar::and_assign(dst, src);
    }
}

}  // namespace gapprob::simd
