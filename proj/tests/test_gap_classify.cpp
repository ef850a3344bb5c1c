#include <numeric>

#include "doctest.h"
#include "gapprob/error.hpp"
#include "gapprob/gap_classify.hpp"
#include "oracle.hpp"

using namespace gapprob;
using Seq = std::vector<std::uint64_t>;

namespace {

const PrimeTable& table() {
    static const PrimeTable t = PrimeTable::build(2'000'000);
    return t;
}

// Census invariants that must hold exactly on every run.
void check_census_identities(const PrimeTable& t, const IntervalCensus& c) {
    const auto& m = c.m();
    const auto h = c.histogram();
    std::uint64_t weighted = 0, surplus = 0, intervals = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        weighted += i * h[i];
        surplus += i > 0 ? (i - 1) * h[i] : 0;
        intervals += h[i];
    }
    CHECK(intervals == c.interval_count());
    std::uint64_t contained = 0;
    for (std::uint64_t k = 1; k <= c.interval_count(); ++k) {
        const auto iv = c.interval(k);
        REQUIRE(iv.lower_prime == t.nth_prime(k));
        REQUIRE(iv.upper_prime == t.nth_prime(k + 1));
        for (auto q : iv.contained) {
            REQUIRE(m.above_scaled(q, iv.lower_prime));
            REQUIRE(m.below_scaled(q, iv.upper_prime));
        }
        contained += iv.contained.size();
    }
    CHECK(weighted == contained);
    CHECK(c.count(GapClass::isolated) == (h.size() > 1 ? h[1] : 0));
    CHECK(c.count(GapClass::right_only) + c.count(GapClass::central) == surplus);
    CHECK(c.count(GapClass::left_only) + c.count(GapClass::central) == surplus);
    const auto& counts = c.class_counts();
    CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == c.classified_primes().size());
    // every prime up to covered_through is classified, the next one is not
    CHECK(c.classified_primes().size() == t.pi(c.covered_through()));
}

}  // namespace

TEST_CASE("census of the first three doubled intervals") {
    const auto c = census(table(), 14);
    REQUIRE(c.interval_count() == 3);
    CHECK(Seq(c.interval(1).contained.begin(), c.interval(1).contained.end()) == Seq{5});
    CHECK(Seq(c.interval(2).contained.begin(), c.interval(2).contained.end()) == Seq{7});
    CHECK(Seq(c.interval(3).contained.begin(), c.interval(3).contained.end()) == Seq{11, 13});
    const auto h = c.histogram();
    REQUIRE(h.size() == 3);
    CHECK(h[0] == 0);
    CHECK(h[1] == 2);
    CHECK(h[2] == 1);
    check_census_identities(table(), c);
}

TEST_CASE("interval positions") {
    const auto c = census(table(), 1000);
    const auto iv = c.interval(11);
    CHECK(iv.lower_prime == 31);
    CHECK(Seq(iv.contained.begin(), iv.contained.end()) == Seq{67, 71, 73});
    CHECK(classify_prime(c, 67) == GapClass::right_only);
    CHECK(classify_prime(c, 71) == GapClass::central);
    CHECK(classify_prime(c, 73) == GapClass::left_only);
    const auto iv9 = c.interval(9);
    CHECK(Seq(iv9.contained.begin(), iv9.contained.end()) == Seq{47, 53});
    CHECK(classify_prime(c, 47) == GapClass::right_only);
    CHECK(classify_prime(c, 53) == GapClass::left_only);

    CHECK(classify_prime(c, 2) == GapClass::initial);
    CHECK(classify_prime(c, 3) == GapClass::initial);
    CHECK(classify_prime(c, 5) == GapClass::isolated);
    CHECK(classify_prime(c, 7) == GapClass::isolated);
    CHECK(classify_prime(c, 11) == GapClass::right_only);
    CHECK(classify_prime(c, 13) == GapClass::left_only);
    CHECK_THROWS_AS(classify_prime(c, 15), InvalidArgument);
    CHECK(classify_prime(c, 997) == classify_prime(census(table(), 2000), 997));
    CHECK_THROWS_AS(classify_prime(c, 1009), InvalidArgument);
    // 1009 <= 1010 but lies beyond 2 * 503, the top of the last interval
    CHECK_THROWS_AS(classify_prime(census(table(), 1010), 1009), InvalidArgument);
}

TEST_CASE("R- and L-prime prefixes") {
    const auto c = census(table(), 2000);
    const auto r = r_primes(c);
    CHECK(Seq(r.begin(), r.begin() + 13) == Seq{11, 17, 29, 41, 47, 59, 67, 71, 97, 101, 107, 109, 127});
    const auto l = l_primes(c);
    CHECK(Seq(l.begin(), l.begin() + 8) == Seq{13, 19, 31, 43, 53, 61, 71, 73});
}

TEST_CASE("pi-equality predicates") {
    const Multiplier two(2, 1);
    CHECK(table().pi_scaled(13, two) == 3);
    CHECK(table().pi_scaled(17, two) == 4);
    CHECK_FALSE(r_prime_by_pi(table(), 13, two));
    CHECK(l_prime_by_pi(table(), 13, two));
    CHECK(r_prime_by_pi(table(), 11, two));
    CHECK(r_prime_by_pi(table(), 71, two));
    CHECK(l_prime_by_pi(table(), 71, two));
    CHECK_THROWS_AS(r_prime_by_pi(table(), 21, two), InvalidArgument);
}

TEST_CASE("pseudo-Ramanujan and pseudo-Labos primes") {
    const auto c = census(table(), 2'000'000);
    const auto ram = ramanujan_primes(table(), 0);
    const auto lab = labos_primes(table(), 0);
    const auto pr = pseudo_primes(c, ram);
    const auto pl = pseudo_primes(c, lab);
    REQUIRE(pr.size() >= 6);
    REQUIRE(pl.size() >= 6);
    CHECK(Seq(pr.begin(), pr.begin() + 6) == Seq{109, 137, 191, 197, 283, 521});
    CHECK(Seq(pl.begin(), pl.begin() + 6) == Seq{131, 151, 229, 233, 311, 571});
    CHECK(pr.back() <= ram.complete_through());

    CHECK_THROWS_AS(pseudo_primes(c, ramanujan_primes(table(), 10, Multiplier(3, 1))), InvalidArgument);
}

TEST_CASE("pseudo-3-Ramanujan search against brute force") {
    const Multiplier three(3, 1);
    const std::uint64_t limit = 300'000;
    const auto c = census(table(), limit, three);
    const auto ram = ramanujan_primes(table(), 0, three);
    const auto got = pseudo_primes(c, ram);

    // brute force: primes satisfying the pi-equality predicate minus 3-Ramanujan primes
    const auto pi = oracle::prime_pi_table(limit);
    const auto ps = oracle::primes_upto(limit);
    const std::uint64_t bound = std::min(c.covered_through(), ram.complete_through());
    Seq expected;
    for (std::size_t i = 1; i + 1 < ps.size() && ps[i] <= bound; ++i) {
        if (ps[i] < 6) continue;  // below 3 * p_1
        if (pi[ps[i] / 3] != pi[ps[i + 1] / 3]) continue;
        if (!std::binary_search(ram.terms.begin(), ram.terms.end(), ps[i])) expected.push_back(ps[i]);
    }
    CHECK(got == expected);
    if (got.empty()) {
        MESSAGE("no pseudo-3-Ramanujan prime <= " << bound);
    } else {
        MESSAGE("smallest pseudo-3-Ramanujan prime: " << got.front());
    }
}

TEST_CASE("R*-primes") {
    const auto c = census(table(), 1000);
    const auto rs = r_star_primes(c);
    CHECK(std::binary_search(rs.begin(), rs.end(), 5));  // (10, 14) holds 11
    CHECK(std::binary_search(rs.begin(), rs.end(), 7));  // (14, 22) holds 17
    CHECK_FALSE(std::binary_search(rs.begin(), rs.end(), 2));  // (4, 6) holds only 5
    for (auto p : rs) {
        const auto k = table().pi(p);
        CHECK(c.interval(k).contained.size() >= 2);
    }
}

TEST_CASE("interleaving of R- and L-primes") {
    const auto small = census(table(), 80);
    const auto r = r_primes(small);
    const auto l = l_primes(small);
    CHECK(Seq(r.begin(), r.begin() + 3) == Seq{11, 17, 29});
    CHECK(Seq(l.begin(), l.begin() + 3) == Seq{13, 19, 31});
    CHECK(check_interleaving(small).ok);

    const auto c = census(table(), 2'000'000);
    const auto rr = r_primes(c);
    const auto ll = l_primes(c);
    // 71 is central: it closes one pair and opens the next
    const auto at = std::find(rr.begin(), rr.end(), 71) - rr.begin();
    CHECK(rr[static_cast<std::size_t>(at)] == ll[static_cast<std::size_t>(at) - 1]);
    const auto res = check_interleaving(c);
    CHECK(res.ok);
    CHECK(res.violation_count == 0);
    CHECK(res.pairs_checked == rr.size());
}

TEST_CASE("census identities for several multipliers") {
    for (const auto& m : {Multiplier(2, 1), Multiplier(3, 2), Multiplier(5, 2), Multiplier(3, 1), Multiplier(7, 3)}) {
        CAPTURE(m.str());
        const auto c = census(table(), 200'000, m);
        check_census_identities(table(), c);
        CHECK(check_interleaving(c).ok);
    }
}

TEST_CASE("boundary primes for non-integer multipliers") {
    const auto c = census(table(), 1000, Multiplier(3, 2));
    CHECK(classify_prime(c, 2) == GapClass::initial);
    CHECK(classify_prime(c, 3) == GapClass::boundary);  // 3 = (3/2) * 2
    CHECK(c.count(GapClass::boundary) == 1);
    const auto c2 = census(table(), 1000, Multiplier(2, 1));
    CHECK(c2.count(GapClass::boundary) == 0);
    CHECK(c2.count(GapClass::initial) == 2);
}

TEST_CASE("special primes are R- or L-primes") {
    for (const auto& m : {Multiplier(2, 1), Multiplier(3, 1)}) {
        const auto c = census(table(), 2'000'000, m);
        const auto ram = ramanujan_primes(table(), 0, m);
        const auto lab = labos_primes(table(), 0, m);
        for (auto p : ram.terms) {
            if (p < 5 || p > c.covered_through()) continue;
            REQUIRE(is_r_class(classify_prime(c, p)));
        }
        for (auto p : lab.terms) {
            if (p < 5 || p > c.covered_through()) continue;
            const auto cls = classify_prime(c, p);
            if (m.is_two()) REQUIRE(is_l_class(cls));
        }
    }
}

TEST_CASE("two characterizations agree") {
    for (const auto& m : {Multiplier(2, 1), Multiplier(3, 1), Multiplier(5, 1)}) {
        const auto c = census(table(), 2'000'000, m);
        const auto res = cross_check_characterizations(table(), c, 1'000'000);
        CAPTURE(m.str());
        CHECK(res.checked > 1000);
        CHECK(res.disagreements == 0);
    }
}

TEST_CASE("census does not depend on the worker count") {
    const auto one = census(table(), 2'000'000, Multiplier(2, 1), 1);
    for (unsigned threads : {2u, 4u, 7u}) {
        const auto many = census(table(), 2'000'000, Multiplier(2, 1), threads);
        CHECK(std::equal(one.histogram().begin(), one.histogram().end(), many.histogram().begin(),
                         many.histogram().end()));
        CHECK(one.class_counts() == many.class_counts());
        CHECK(std::equal(one.classes().begin(), one.classes().end(), many.classes().begin(), many.classes().end()));
    }
}

TEST_CASE("census edge cases") {
    CHECK_THROWS_AS(census(table(), 3'000'000), CoverageError);
    const auto tiny = census(table(), 5);  // no interval fits: 2 * p_2 = 6 > 5
    CHECK(tiny.interval_count() == 0);
    CHECK(classify_prime(tiny, 3) == GapClass::initial);
    CHECK_THROWS_AS(classify_prime(tiny, 5), InvalidArgument);
}
