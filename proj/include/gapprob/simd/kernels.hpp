#pragma once

// Data-parallel inner loops used by the sieve, the prime-count index and the
// Cramer sampler. Each kernel has a scalar reference implementation and
// vector variants (AVX2 on x86-64, NEON on AArch64). The dispatcher picks the
// widest variant the running CPU supports; all variants are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gapprob::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

// Best ISA available on this machine and compiled into this binary.
Isa detected_isa() noexcept;

// ISA the dispatching entry points currently route to.
Isa active_isa() noexcept;

// Overrides dispatch (tests and benchmarks). Requests for an unavailable ISA
// fall back to scalar. Returns the previous setting.
Isa force_isa(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

// Total number of set bits.
std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;

// out[i] = popcount(words[i*block .. (i+1)*block)), the last block may be short.
// out.size() must equal ceil(words.size() / block).
void block_popcounts(std::span<const std::uint64_t> words, std::size_t block, std::span<std::uint32_t> out) noexcept;

// Bit i of `bits` is set iff u[i] < threshold[i]. Bits past u.size() in the
// last word are cleared. bits.size() must be ceil(u.size() / 64).
void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept;

// dst[i] &= src[i]
void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept;

namespace scalar {
std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;
void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept;
void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GAPPROB_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;
void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept;
void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept;
}  // namespace avx2
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define GAPPROB_HAVE_NEON_KERNELS 1
namespace neon {
std::uint64_t popcount(std::span<const std::uint64_t> words) noexcept;
void below_threshold_mask(std::span<const double> u, std::span<const double> threshold,
                          std::span<std::uint64_t> bits) noexcept;
void and_assign(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept;
}  // namespace neon
#endif

}  // namespace gapprob::simd
