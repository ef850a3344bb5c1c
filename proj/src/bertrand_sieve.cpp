#include "gapprob/bertrand_sieve.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "gapprob/error.hpp"
#include "gapprob/gap_classify.hpp"
#include "prime_source.hpp"

namespace gapprob {

namespace {

// Index of the largest prime q with q < m * b, or npos when none is known to
// be largest because m * b reaches past the table.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t largest_below_scaled(std::span<const std::uint64_t> primes, std::uint64_t limit, std::uint64_t b,
                                 const Multiplier& m) {
    // Every prime < m b must be known: m b - 1 <= limit.
    if (m.ceil_mul(b) - 1 > limit) return npos;
    const auto it = std::partition_point(primes.begin(), primes.end(),
                                         [&](std::uint64_t q) { return m.below_scaled(q, b); });
    return static_cast<std::size_t>(it - primes.begin()) - 1;
}

CoverageError chain_coverage(std::uint64_t b, const Multiplier& m, std::uint64_t limit) {
    const auto need = static_cast<std::uint64_t>(m.ceil_mul(b) - 1);
    return CoverageError("bertrand chain: next term after " + std::to_string(b) + " needs primes below " +
                             std::to_string(need + 1) + ", table limit is " + std::to_string(limit),
                         need);
}

ChainStall chain_stall(std::uint64_t b, const Multiplier& m) {
    return ChainStall("bertrand chain stalls at " + std::to_string(b) + ": no prime in (" + std::to_string(b) +
                          ", " + m.str() + " * " + std::to_string(b) + ")",
                      b);
}

}  // namespace

BertrandChain bertrand_chain(const PrimeTable& t, std::uint64_t seed, std::uint64_t len, const Multiplier& m) {
    if (seed > t.limit()) {
        throw CoverageError("bertrand chain: seed " + std::to_string(seed) + " exceeds table limit " +
                                std::to_string(t.limit()),
                            seed);
    }
    if (!t.is_prime(seed)) throw InvalidArgument("bertrand chain: seed " + std::to_string(seed) + " is not prime");
    const detail::PrimeSource source(t);
    const auto primes = source.primes();
    BertrandChain chain{seed, m, {}};
    if (len == 0) return chain;
    chain.terms.reserve(len);
    chain.terms.push_back(seed);
    while (chain.terms.size() < len) {
        const std::uint64_t b = chain.terms.back();
        const std::size_t i = largest_below_scaled(primes, t.limit(), b, m);
        if (i == npos) throw chain_coverage(b, m, t.limit());
        if (primes[i] <= b) throw chain_stall(b, m);
        chain.terms.push_back(primes[i]);
    }
    return chain;
}

SieveResult sieve_construct(const PrimeTable& t, std::uint64_t count, const Multiplier& m) {
    const detail::PrimeSource source(t);
    const auto primes = source.primes();
    SieveResult res;
    res.m = m;

    // Owning chain + 1 per prime index, 0 when no chain has reached it.
    std::vector<std::uint32_t> owner(primes.size(), 0);
    // (index of last term, chain id), smallest last term first
    using Entry = std::pair<std::size_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

    for (std::size_t cand = 0; cand < primes.size() && res.seeds.size() < count; ++cand) {
        while (!frontier.empty() && frontier.top().first < cand) {
            const auto [last, id] = frontier.top();
            frontier.pop();
            const std::uint64_t b = primes[last];
            const std::size_t next = largest_below_scaled(primes, t.limit(), b, m);
            if (next == npos) throw chain_coverage(b, m, t.limit());
            if (next <= last) {
                ++res.stalled;
                continue;
            }
            res.chains[id].terms.push_back(primes[next]);
            if (owner[next] != 0) {
                // the rest of this chain repeats the other one
                res.merges.push_back({id, owner[next] - 1, primes[next]});
                continue;
            }
            owner[next] = static_cast<std::uint32_t>(id + 1);
            frontier.emplace(next, id);
        }
        if (owner[cand] != 0) continue;
        res.seeds.push_back(primes[cand]);
        res.chains.push_back(BertrandChain{primes[cand], m, {primes[cand]}});
        owner[cand] = static_cast<std::uint32_t>(res.chains.size());
        frontier.emplace(cand, res.chains.size() - 1);
    }
    if (res.seeds.size() < count) {
        throw CoverageError("sieve_construct: only " + std::to_string(res.seeds.size()) + " of " +
                                std::to_string(count) + " seeds below table limit " + std::to_string(t.limit()),
                            sieve_horizon(count, m));
    }
    return res;
}

std::uint64_t sieve_horizon(std::uint64_t count, const Multiplier& m) {
    // Seeds are R-primes for m = 2, roughly 60% of all primes; chains reach m times the last seed.
    const std::uint64_t last_seed = detail::nth_prime_upper(2 * count + 10);
    return static_cast<std::uint64_t>(m.ceil_mul(last_seed)) + 100;
}

SeedIdentityCheck verify_seed_identity(const PrimeTable& t, std::uint64_t count) {
    const Multiplier two;
    SeedIdentityCheck res;
    res.count = count;
    if (count == 0) {
        res.ok = true;
        return res;
    }
    res.seeds = sieve_construct(t, count, two).seeds;

    const auto c = census(t, t.limit(), two);
    const auto r = r_primes(c);
    if (r.size() + 1 < count) {
        throw CoverageError("verify_seed_identity: only " + std::to_string(r.size()) + " R-primes below " +
                                std::to_string(c.covered_through()) + ", need " + std::to_string(count - 1),
                            sieve_horizon(count, two));
    }
    res.r_sequence.reserve(count);
    res.r_sequence.push_back(2);
    res.r_sequence.insert(res.r_sequence.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(count - 1));
    res.r_sequence.resize(count);

    while (res.matched < count && res.seeds[res.matched] == res.r_sequence[res.matched]) ++res.matched;
    res.ok = res.matched == count;
    if (!res.ok) res.first_mismatch = res.matched + 1;
    return res;
}

}  // namespace gapprob
