#include "gapprob/cramer_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "gapprob/error.hpp"
#include "gapprob/simd/kernels.hpp"

namespace gapprob {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed) noexcept { return mix64(seed + kGamma); }

double to_unit(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

double inclusion_threshold(std::uint64_t n) noexcept { return 2.0 / std::log(static_cast<double>(n)); }

// Odd n in [lo, hi] (lo odd, >= 9) that the model includes, appended to out.
void sample_range(std::uint64_t key, std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
    constexpr std::size_t kBatch = 4096;
    std::vector<double> u(kBatch), thr(kBatch);
    std::vector<std::uint64_t> bits(kBatch / 64);
    for (std::uint64_t start = lo; start <= hi; start += 2 * kBatch) {
        const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, (hi - start) / 2 + 1));
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t v = start + 2 * i;
            u[i] = to_unit(mix64(key + v * kGamma));
            thr[i] = inclusion_threshold(v);
        }
        const std::size_t words = (n + 63) / 64;
        simd::below_threshold_mask(std::span(u).first(n), std::span(thr).first(n), std::span(bits).first(words));
        for (std::size_t w = 0; w < words; ++w) {
            for (std::uint64_t b = bits[w]; b != 0; b &= b - 1) {
                out.push_back(start + 2 * (w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(b))));
            }
        }
    }
}

}  // namespace

double cramer_uniform(std::uint64_t seed, std::uint64_t n) noexcept {
    return to_unit(mix64(stream_key(seed) + n * kGamma));
}

bool cramer_included(std::uint64_t seed, std::uint64_t n) noexcept {
    if (n % 2 == 0 || n < 3) return false;
    if (n < 9) return true;
    return cramer_uniform(seed, n) < inclusion_threshold(n);
}

CramerSample simulate(std::uint64_t limit, std::uint64_t seed, unsigned threads) {
    CramerSample s;
    s.limit = limit;
    s.seed = seed;
    for (std::uint64_t v : {3, 5, 7}) {
        if (v <= limit) s.pseudo_primes.push_back(v);
    }
    if (limit < 9) return s;

    const std::uint64_t key = stream_key(seed);
    const std::uint64_t odd_count = (limit - 9) / 2 + 1;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::clamp<std::uint64_t>(odd_count / (1u << 16), 1, threads);
    std::vector<std::vector<std::uint64_t>> parts(workers);
    const std::uint64_t per = (odd_count + workers - 1) / workers;
    auto run = [&](std::uint64_t w) {
        const std::uint64_t first = w * per;
        if (first >= odd_count) return;
        const std::uint64_t last = std::min(odd_count, first + per) - 1;
        sample_range(key, 9 + 2 * first, 9 + 2 * last, parts[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (const auto& part : parts) s.pseudo_primes.insert(s.pseudo_primes.end(), part.begin(), part.end());
    return s;
}

double interval_free_probability(std::uint64_t a, std::uint64_t b) {
    if (a % 2 != 0 || b % 2 != 0) {
        throw InvalidArgument("interval_free_probability: endpoints must be even, got (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
    if (a < 8 || b <= a) {
        throw InvalidArgument("interval_free_probability: need 8 <= a < b, got (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
    double log_p = 0.0;
    for (std::uint64_t v = a + 1; v < b; v += 2) log_p += std::log1p(-inclusion_threshold(v));
    return std::exp(log_p);
}

CensusEstimate census_on_sample(const CramerSample& s) {
    const auto& q = s.pseudo_primes;
    if (q.size() < 3) {
        throw InvalidArgument("census_on_sample: need at least 3 sample elements, got " + std::to_string(q.size()));
    }
    CensusEstimate e;
    // i walks the contents; j is the interval's lower element.
    std::size_t i = 0;
    for (std::size_t j = 0; j + 1 < q.size() && 2 * q[j + 1] <= s.limit; ++j) {
        const std::uint64_t lo = 2 * q[j];
        const std::uint64_t hi = 2 * q[j + 1];
        while (i < q.size() && q[i] <= lo) ++i;
        std::size_t k = i;
        while (k < q.size() && q[k] < hi) ++k;
        const std::size_t h = k - i;
        if (e.exact.size() <= h) e.exact.resize(h + 1, 0);
        ++e.exact[h];
        ++e.trials;
        i = k;
    }
    if (e.exact.empty()) e.exact.assign(1, 0);
    e.at_least.assign(e.exact.size() + 1, 0);
    for (std::size_t h = e.exact.size(); h-- > 0;) e.at_least[h] = e.at_least[h + 1] + e.exact[h];

    const double n = static_cast<double>(e.trials);
    auto freq = [&](std::uint64_t c) { return e.trials == 0 ? 0.0 : static_cast<double>(c) / n; };
    auto se = [&](double p) { return e.trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / n); };
    for (auto c : e.at_least) {
        e.p_hat_Ah.push_back(freq(c));
        e.se_Ah.push_back(se(e.p_hat_Ah.back()));
    }
    for (auto c : e.exact) {
        e.p_hat_exact_h.push_back(freq(c));
        e.se_exact_h.push_back(se(e.p_hat_exact_h.back()));
    }
    e.p_hat_A1 = e.p_hat_Ah.size() > 1 ? e.p_hat_Ah[1] : 0.0;
    return e;
}

GeometricLawCheck check_geometric_law(const CensusEstimate& e, unsigned h) {
    if (h == 0) throw InvalidArgument("check_geometric_law: h must be >= 1");
    auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    GeometricLawCheck c;
    c.h = h;
    const double p1 = e.p_hat_A1;
    const double se1 = at(e.se_Ah, 1);
    c.p_ah = at(e.p_hat_Ah, h);
    c.p_a1_pow_h = std::pow(p1, h);
    c.diff = c.p_ah - c.p_a1_pow_h;
    const double se_h = at(e.se_Ah, h);
    const double slope = h * std::pow(p1, h - 1.0);
    c.pooled_se = std::sqrt(se_h * se_h + slope * slope * se1 * se1);
    c.z = c.pooled_se > 0 ? c.diff / c.pooled_se : 0.0;
    return c;
}

bool census_identity_holds(const CensusEstimate& e) noexcept {
    if (e.at_least.size() != e.exact.size() + 1) return false;
    for (std::size_t h = 0; h < e.exact.size(); ++h) {
        if (e.exact[h] != e.at_least[h] - e.at_least[h + 1]) return false;
    }
    return e.at_least.back() == 0 && e.at_least.front() == e.trials;
}

}  // namespace gapprob
