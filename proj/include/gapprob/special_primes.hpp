#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapprob/multiplier.hpp"
#include "gapprob/prime_table.hpp"

namespace gapprob {

enum class SeqKind { ramanujan, labos };

// How completeness of the leading terms was established.
enum class Certificate {
    // m = 2: R_n < p_{3n} (Laishram), so scanning to p_{3n} sees every x with deficit < n.
    laishram_bound,
    // general m: the deficit stays >= n over [R_n, H] with H >= 3/2 * R_n. Empirical margin.
    horizon_margin,
    // Labos terms are first hits of a level; exact whenever the hit lies inside the scan.
    first_hit,
};

const char* to_string(SeqKind kind) noexcept;
const char* to_string(Certificate c) noexcept;

struct SpecialPrimeSeq {
    SeqKind kind = SeqKind::ramanujan;
    Multiplier m;
    std::vector<std::uint64_t> terms;
    std::uint64_t verified_count = 0;
    std::uint64_t horizon = 0;  // largest x scanned
    Certificate certificate = Certificate::first_hit;

    // Every member of the family <= this value is in `terms`.
    std::uint64_t complete_through() const noexcept { return terms.empty() ? 0 : terms.back(); }
};

// Table limit that suffices to certify `count` terms.
std::uint64_t ramanujan_horizon(std::uint64_t count, const Multiplier& m);
std::uint64_t labos_horizon(std::uint64_t count, const Multiplier& m);

// R_n^(m) = 1 + max{x <= limit : pi(x) - pi(x/m) < n}, for n = 1..count.
// count == 0 returns every term certifiable within the table.
// Throws IncompleteResult when fewer than `count` terms can be certified.
SpecialPrimeSeq ramanujan_primes(const PrimeTable& t, std::uint64_t count, const Multiplier& m = {});

// L_n^(m) = min{x : pi(x) - pi(x/m) = n}. count == 0 returns all hits <= limit.
SpecialPrimeSeq labos_primes(const PrimeTable& t, std::uint64_t count, const Multiplier& m = {});

struct SondowLaishramCheck {
    std::uint64_t n;
    std::optional<bool> lower_ok;  // p_{2n} < R_n, stated for n > 1 only
    bool upper_ok;                 // R_n < p_{3n}
};

// Requires kind = ramanujan and m = 2; the table must reach p_{3n} for every term.
std::vector<SondowLaishramCheck> verify_sondow_laishram(const SpecialPrimeSeq& seq, const PrimeTable& t);

// Deficit c(x) = pi(x) - pi(x/m) evaluated directly through the table.
std::int64_t deficit(const PrimeTable& t, std::uint64_t x, const Multiplier& m);

}  // namespace gapprob
