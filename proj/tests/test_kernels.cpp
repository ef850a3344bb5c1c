#include <bit>
#include <random>
#include <vector>

#include "doctest.h"
#include "gapprob/prime_table.hpp"
#include "gapprob/simd/kernels.hpp"

using namespace gapprob;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    return w;
}

struct IsaGuard {
    simd::Isa saved;
    explicit IsaGuard(simd::Isa isa) : saved(simd::force_isa(isa)) {}
    ~IsaGuard() { simd::force_isa(saved); }
};

std::vector<simd::Isa> available_isas() {
    std::vector<simd::Isa> out{simd::Isa::scalar};
    for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
        if (simd::isa_available(isa)) out.push_back(isa);
    }
    return out;
}

}  // namespace

TEST_CASE("popcount variants agree with std::popcount") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 64u, 127u, 1000u}) {
        const auto w = random_words(rng, n);
        std::uint64_t expected = 0;
        for (auto x : w) expected += std::popcount(x);
        CHECK(simd::scalar::popcount(w) == expected);
        for (auto isa : available_isas()) {
            IsaGuard guard(isa);
            CHECK(simd::popcount(w) == expected);
        }
    }
    const std::vector<std::uint64_t> ones(37, ~std::uint64_t{0});
    CHECK(simd::popcount(ones) == 37 * 64);
}

TEST_CASE("below_threshold_mask variants are bit-identical") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 63u, 64u, 65u, 200u, 4097u}) {
        std::vector<double> u(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = uni(rng);
            t[i] = (i % 7 == 0) ? u[i] : uni(rng);  // ties must compare false
        }
        std::vector<std::uint64_t> ref((n + 63) / 64, 0xdeadbeef);
        simd::scalar::below_threshold_mask(u, t, ref);
        for (std::size_t i = 0; i < n; ++i) {
            const bool bit = (ref[i / 64] >> (i % 64)) & 1;
            REQUIRE(bit == (u[i] < t[i]));
        }
        for (auto isa : available_isas()) {
            IsaGuard guard(isa);
            std::vector<std::uint64_t> got((n + 63) / 64, ~std::uint64_t{0});
            simd::below_threshold_mask(u, t, got);
            CHECK(got == ref);
        }
    }
}

TEST_CASE("and_assign variants agree") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {0u, 1u, 5u, 8u, 33u, 1024u}) {
        const auto a = random_words(rng, n);
        const auto b = random_words(rng, n);
        auto ref = a;
        simd::scalar::and_assign(ref, b);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(ref[i] == (a[i] & b[i]));
        for (auto isa : available_isas()) {
            IsaGuard guard(isa);
            auto got = a;
            simd::and_assign(got, b);
            CHECK(got == ref);
        }
    }
}

TEST_CASE("block_popcounts handles a short trailing block") {
    std::mt19937_64 rng(17);
    const auto w = random_words(rng, 50);
    std::vector<std::uint32_t> out(4);
    simd::block_popcounts(w, 16, out);
    std::uint64_t total = 0;
    for (auto c : out) total += c;
    CHECK(total == simd::scalar::popcount(w));
    CHECK(out[3] == simd::scalar::popcount(std::span(w).subspan(48)));
}

TEST_CASE("forcing an unavailable ISA falls back to scalar") {
    const auto missing = simd::detected_isa() == simd::Isa::neon ? simd::Isa::avx2 : simd::Isa::neon;
    IsaGuard guard(missing);
    CHECK(simd::active_isa() == simd::Isa::scalar);
}

TEST_CASE("prime table is identical under every kernel variant") {
    PrimeTable reference = [] {
        IsaGuard guard(simd::Isa::scalar);
        return PrimeTable::build(2'000'000);
    }();
    for (auto isa : available_isas()) {
        IsaGuard guard(isa);
        const auto t = PrimeTable::build(2'000'000);
        CHECK(std::equal(t.odd_bits().begin(), t.odd_bits().end(), reference.odd_bits().begin(),
                         reference.odd_bits().end()));
        CHECK(t.pi(1'999'999) == reference.pi(1'999'999));
    }
}
