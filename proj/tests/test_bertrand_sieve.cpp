#include <map>
#include <set>

#include "doctest.h"
#include "gapprob/bertrand_sieve.hpp"
#include "gapprob/error.hpp"
#include "oracle.hpp"

using namespace gapprob;
using Seq = std::vector<std::uint64_t>;

namespace {

const PrimeTable& table() {
    static const PrimeTable t = PrimeTable::build(200'000);
    return t;
}

// Straight transcription of the rule: scan primes upward, regrow every chain
// from scratch up to the candidate, and take the first prime no chain visits.
Seq naive_seeds(const Seq& primes, std::uint64_t count) {
    auto largest_below = [&](std::uint64_t x) {
        std::uint64_t best = 0;
        for (auto p : primes) {
            if (p >= x) break;
            best = p;
        }
        return best;
    };
    Seq seeds;
    for (auto q : primes) {
        if (seeds.size() == count) break;
        bool covered = false;
        for (auto s : seeds) {
            for (std::uint64_t b = s; b <= q; b = largest_below(2 * b)) {
                if (b == q) covered = true;
            }
        }
        if (!covered) seeds.push_back(q);
    }
    return seeds;
}

}  // namespace

TEST_CASE("Bertrand chains from a few seeds") {
    CHECK(bertrand_chain(table(), 2, 7).terms == Seq{2, 3, 5, 7, 13, 23, 43});
    CHECK(bertrand_chain(table(), 11, 4).terms == Seq{11, 19, 37, 73});
    CHECK(bertrand_chain(table(), 17, 4).terms == Seq{17, 31, 61, 113});
    CHECK(bertrand_chain(table(), 29, 4).terms == Seq{29, 53, 103, 199});
    CHECK(bertrand_chain(table(), 29, 0).terms.empty());
    CHECK(bertrand_chain(table(), 29, 1).terms == Seq{29});
}

TEST_CASE("chain terms are prime and below m times their predecessor") {
    for (const auto& m : {Multiplier(2, 1), Multiplier(5, 2), Multiplier(3, 1), Multiplier(7, 4)}) {
        const auto chain = bertrand_chain(table(), 101, 6, m);
        CAPTURE(m.str());
        for (std::size_t i = 1; i < chain.terms.size(); ++i) {
            const auto b = chain.terms[i - 1];
            const auto q = chain.terms[i];
            CHECK(oracle::trial_division_is_prime(q));
            CHECK(q > b);
            CHECK(m.below_scaled(q, b));
            // nothing prime in [q + 1, m b)
            for (std::uint64_t x = q + 1; m.below_scaled(x, b); ++x) REQUIRE_FALSE(oracle::trial_division_is_prime(x));
        }
    }
}

TEST_CASE("chain errors") {
    // 3/2 * 2 = 3, and no prime lies in (2, 3)
    CHECK_THROWS_AS(bertrand_chain(table(), 2, 3, Multiplier(3, 2)), ChainStall);
    CHECK_THROWS_AS(bertrand_chain(table(), 2, 3, Multiplier(3, 2)), Error);
    try {
        bertrand_chain(table(), 2, 3, Multiplier(3, 2));
    } catch (const ChainStall& e) {
        CHECK(e.at() == 2);
        CHECK(e.exit_code() == 1);
    }
    CHECK_THROWS_AS(bertrand_chain(table(), 15, 3), InvalidArgument);
    CHECK_THROWS_AS(bertrand_chain(table(), 100'003, 5), CoverageError);  // 2 * 100003 > 200000
    CHECK_THROWS_AS(bertrand_chain(table(), 300'007, 1), CoverageError);
}

TEST_CASE("sieve seeds") {
    const auto res = sieve_construct(table(), 14);
    CHECK(res.seeds == Seq{2, 11, 17, 29, 41, 47, 59, 67, 71, 97, 101, 107, 109, 127});
    CHECK(res.seeds[12] == 109);
    REQUIRE(res.chains.size() == 14);
    CHECK(Seq(res.chains[3].terms.begin(), res.chains[3].terms.begin() + 4) == Seq{29, 53, 103, 199});
    CHECK(sieve_construct(table(), 1).seeds == Seq{2});
}

TEST_CASE("sieve agrees with a naive transcription") {
    const auto primes = oracle::primes_upto(20'000);
    const auto fast = sieve_construct(table(), 300);
    CHECK(fast.seeds == naive_seeds(primes, 300));
}

TEST_CASE("chains merge but never swallow a later seed") {
    const auto res = sieve_construct(table(), 3000);
    CHECK(std::is_sorted(res.seeds.begin(), res.seeds.end()));
    CHECK(std::adjacent_find(res.seeds.begin(), res.seeds.end()) == res.seeds.end());
    REQUIRE_FALSE(res.merges.empty());
    // the first meeting point: 17 -> 31 -> 61 -> 113 and 59 -> 113
    const auto first = std::min_element(res.merges.begin(), res.merges.end(),
                                        [](const ChainMerge& a, const ChainMerge& b) { return a.at < b.at; });
    CHECK(first->at == 113);
    CHECK(std::set<std::uint64_t>{res.seeds[first->chain], res.seeds[first->into]} ==
          std::set<std::uint64_t>{17, 59});

    // A prime sits on one chain only, except where a merged chain ends on it.
    std::map<std::uint64_t, std::size_t> owner;
    std::set<std::size_t> merged;
    for (const auto& mg : res.merges) {
        CHECK(res.chains[mg.chain].terms.back() == mg.at);
        merged.insert(mg.chain);
    }
    for (std::size_t id = 0; id < res.chains.size(); ++id) {
        auto terms = res.chains[id].terms;
        if (merged.count(id)) terms.pop_back();
        for (auto p : terms) REQUIRE(owner.emplace(p, id).second);
    }
    // no seed is on an earlier chain
    for (std::size_t id = 0; id < res.seeds.size(); ++id) CHECK(owner.at(res.seeds[id]) == id);
}

TEST_CASE("seeds coincide with 2 followed by the R-primes") {
    const auto one = verify_seed_identity(table(), 1);
    CHECK(one.ok);
    CHECK(one.seeds == Seq{2});
    const auto small = verify_seed_identity(table(), 14);
    CHECK(small.ok);
    CHECK(small.matched == 14);
    const auto big = verify_seed_identity(table(), 1000);
    CHECK(big.ok);
    CHECK_FALSE(big.first_mismatch.has_value());
    CHECK(verify_seed_identity(table(), 0).ok);
}

TEST_CASE("sieve needs room for the chains") {
    const auto small = PrimeTable::build(100);
    CHECK_THROWS_AS(sieve_construct(small, 200), CoverageError);
    CHECK(sieve_horizon(1000) >= 2 * 14'000);
    const auto t = PrimeTable::build(sieve_horizon(1000));
    CHECK(verify_seed_identity(t, 1000).ok);
}

TEST_CASE("sieve for other multipliers") {
    // 3/2: the chain from 2 stalls immediately (no prime in (2, 3)).
    const auto res = sieve_construct(table(), 50, Multiplier(3, 2));
    CHECK(res.seeds.front() == 2);
    CHECK(res.seeds[1] == 3);
    CHECK(res.stalled >= 1);
    CHECK(std::is_sorted(res.seeds.begin(), res.seeds.end()));
    const auto three = sieve_construct(table(), 200, Multiplier(3, 1));
    CHECK(three.seeds.size() == 200);
    CHECK(three.seeds.front() == 2);
}
