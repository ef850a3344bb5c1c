#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapprob/multiplier.hpp"
#include "gapprob/prime_table.hpp"
#include "gapprob/special_primes.hpp"

namespace gapprob {

// Position of a prime inside its interval (m p_k, m p_{k+1}).
enum class GapClass : std::uint8_t {
    initial,     // below m p_1, inside no interval (2 and 3 for m = 2)
    boundary,    // exactly m p_k for some k; only possible for non-integer m
    isolated,    // sole prime of its interval
    right_only,  // first of >= 2
    left_only,   // last of >= 2
    central,     // strictly between the first and the last
};
inline constexpr std::size_t kGapClassCount = 6;

const char* to_string(GapClass c) noexcept;

inline bool is_r_class(GapClass c) noexcept { return c == GapClass::right_only || c == GapClass::central; }
inline bool is_l_class(GapClass c) noexcept { return c == GapClass::left_only || c == GapClass::central; }

struct IntervalView {
    std::uint64_t k;  // 1-based
    std::uint64_t lower_prime;  // p_k
    std::uint64_t upper_prime;  // p_{k+1}
    std::span<const std::uint64_t> contained;
};

// Every interval (m p_k, m p_{k+1}) with m p_{k+1} <= limit, the primes
// strictly inside each, the histogram h_i of intervals holding exactly i
// primes, and the class of every prime below m p_{K+1}.
class IntervalCensus {
public:
    const Multiplier& m() const noexcept { return m_; }
    std::uint64_t limit() const noexcept { return limit_; }

    std::uint64_t interval_count() const noexcept { return first_contained_.empty() ? 0 : first_contained_.size() - 1; }
    IntervalView interval(std::uint64_t k) const;

    // Primes below m p_{K+1}: every one of them carries a class.
    std::span<const std::uint64_t> classified_primes() const noexcept {
        return std::span(primes_).first(classes_.size());
    }
    std::span<const GapClass> classes() const noexcept { return classes_; }
    // Interval index per classified prime, 0 for initial and boundary primes.
    std::span<const std::uint64_t> interval_of() const noexcept { return interval_of_; }

    // Histogram h_i; index i = number of primes in the interval.
    std::span<const std::uint64_t> histogram() const noexcept { return histogram_; }
    const std::array<std::uint64_t, kGapClassCount>& class_counts() const noexcept { return class_counts_; }
    std::uint64_t count(GapClass c) const noexcept { return class_counts_[static_cast<std::size_t>(c)]; }

    // Largest value x such that every prime <= x is classified.
    std::uint64_t covered_through() const noexcept { return covered_through_; }

    // The prime list this census was built from (all primes <= limit).
    std::span<const std::uint64_t> all_primes() const noexcept { return primes_; }

    friend IntervalCensus census(const PrimeTable& t, std::uint64_t limit, const Multiplier& m, unsigned threads);

private:
    Multiplier m_;
    std::uint64_t limit_ = 0;
    std::uint64_t covered_through_ = 0;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> first_contained_;  // index into primes_, K+1 entries
    std::vector<std::uint64_t> contained_count_;
    std::vector<GapClass> classes_;
    std::vector<std::uint64_t> interval_of_;
    std::vector<std::uint64_t> histogram_;
    std::array<std::uint64_t, kGapClassCount> class_counts_{};
};

// threads == 0 picks hardware concurrency; the result does not depend on it.
IntervalCensus census(const PrimeTable& t, std::uint64_t limit, const Multiplier& m = {}, unsigned threads = 1);

// Throws InvalidArgument for composites and primes outside the classified range.
GapClass classify_prime(const IntervalCensus& c, std::uint64_t p);

// R-primes: right-only and central. L-primes: left-only and central.
std::vector<std::uint64_t> r_primes(const IntervalCensus& c);
std::vector<std::uint64_t> l_primes(const IntervalCensus& c);

// R-primes (or L-primes) that are not in `s`, up to min(covered_through,
// s.complete_through()). Multiplier mismatch is an InvalidArgument.
std::vector<std::uint64_t> pseudo_primes(const IntervalCensus& c, const SpecialPrimeSeq& s);

// Lower endpoints p_k whose interval holds at least one R-prime.
std::vector<std::uint64_t> r_star_primes(const IntervalCensus& c);

struct InterleavingViolation {
    std::uint64_t index;  // 1-based i, initial primes excluded
    std::uint64_t r;      // R_i
    std::uint64_t l;      // L_i
    std::optional<std::uint64_t> next_r;  // R_{i+1}
};

struct InterleavingResult {
    bool ok = true;
    std::uint64_t pairs_checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<InterleavingViolation> violations;  // first few only
};

// R_1 <= L_1 <= R_2 <= L_2 <= ... over the interval-derived sequences.
InterleavingResult check_interleaving(const IntervalCensus& c);

// Second characterization: p_n is R iff pi(p_n / m) = pi(p_{n+1} / m) and
// L iff pi(p_{n-1} / m) = pi(p_n / m), evaluated through the table.
bool r_prime_by_pi(const PrimeTable& t, std::uint64_t p, const Multiplier& m);
bool l_prime_by_pi(const PrimeTable& t, std::uint64_t p, const Multiplier& m);

struct CrossCheckResult {
    std::uint64_t checked = 0;
    std::uint64_t disagreements = 0;
    std::optional<std::uint64_t> first_disagreement;
};

// Compares interval-position classes with the pi-equality predicates for all
// classified primes p <= up_to that lie in an interval.
CrossCheckResult cross_check_characterizations(const PrimeTable& t, const IntervalCensus& c, std::uint64_t up_to);

}  // namespace gapprob
