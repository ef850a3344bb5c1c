#include "gapprob/special_primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapprob/error.hpp"
#include "prime_source.hpp"

namespace gapprob {

namespace {

// Result of one ascending pass of c(x) = pi(x) - pi(x/m) over [0, horizon].
struct DeficitScan {
    std::vector<std::uint64_t> last_at_level;  // last x with c(x) == v
    std::vector<std::uint64_t> first_hit;      // first x with c(x) == v, v >= 1 at index v-1
};

// c changes only at primes (+1) and at ceil(m*q) for primes q (-1); distinct
// q give distinct departure points since m > 1, so each step moves c by +1,
// -1, or both at once.
DeficitScan scan_deficit(std::span<const std::uint64_t> primes, std::uint64_t horizon, const Multiplier& m) {
    DeficitScan out;
    out.last_at_level.assign(1, 0);
    std::size_t arrive = 0;
    std::size_t depart = 0;
    std::uint64_t c = 0;
    std::uint64_t x = 0;  // start of the current constant run
    auto departure_at = [&](std::size_t j) -> u128 { return m.ceil_mul(primes[j]); };

    while (true) {
        u128 next = u128(horizon) + 1;
        if (arrive < primes.size() && primes[arrive] <= horizon) next = primes[arrive];
        if (depart < arrive) next = std::min(next, departure_at(depart));
        if (next > horizon) {
            out.last_at_level[c] = horizon;
            break;
        }
        const auto e = static_cast<std::uint64_t>(next);
        if (e > x) out.last_at_level[c] = e - 1;
        if (arrive < primes.size() && primes[arrive] == e) {
            ++c;
            ++arrive;
        }
        if (depart < arrive && departure_at(depart) == e) {
            --c;
            ++depart;
        }
        if (c >= out.last_at_level.size()) {
            out.last_at_level.resize(c + 1, 0);
            out.first_hit.push_back(e);
        }
        x = e;
    }
    return out;
}

std::string describe(SeqKind kind, const Multiplier& m) {
    return std::string(to_string(kind)) + " primes (m = " + m.str() + ")";
}

}  // namespace

const char* to_string(SeqKind kind) noexcept { return kind == SeqKind::ramanujan ? "ramanujan" : "labos"; }

const char* to_string(Certificate c) noexcept {
    switch (c) {
        case Certificate::laishram_bound: return "laishram-bound";
        case Certificate::horizon_margin: return "horizon-margin-1.5";
        case Certificate::first_hit: break;
    }
    return "first-hit";
}

std::uint64_t ramanujan_horizon(std::uint64_t count, const Multiplier& m) {
    if (m.is_two()) return std::max<std::uint64_t>(detail::nth_prime_upper(3 * count), 16);
    // R_n^(m) ~ p_k with k = n m / (m - 1); leave room for the 3/2 margin.
    const u128 k = (u128(count) * m.num() + (m.num() - m.den()) - 1) / (m.num() - m.den());
    return 2 * detail::nth_prime_upper(static_cast<std::uint64_t>(k)) + 100;
}

std::uint64_t labos_horizon(std::uint64_t count, const Multiplier& m) {
    // L_n <= R_n: the deficit first reaches n no later than R_n.
    return ramanujan_horizon(count, m);
}

std::int64_t deficit(const PrimeTable& t, std::uint64_t x, const Multiplier& m) {
    return static_cast<std::int64_t>(t.pi(x)) - static_cast<std::int64_t>(t.pi_scaled(x, m));
}

SpecialPrimeSeq ramanujan_primes(const PrimeTable& t, std::uint64_t count, const Multiplier& m) {
    const detail::PrimeSource source(t);
    const std::uint64_t horizon = t.limit();
    const auto scan = scan_deficit(source.primes(), horizon, m);

    SpecialPrimeSeq seq;
    seq.kind = SeqKind::ramanujan;
    seq.m = m;
    seq.horizon = horizon;
    seq.certificate = m.is_two() ? Certificate::laishram_bound : Certificate::horizon_margin;

    const std::uint64_t prime_count = source.primes().size();
    std::uint64_t running_max = 0;
    for (std::uint64_t n = 1; n < scan.last_at_level.size(); ++n) {
        running_max = std::max(running_max, scan.last_at_level[n - 1]);
        const std::uint64_t r = running_max + 1;
        const bool certified = m.is_two() ? (3 * n <= prime_count) : (u128(r) * 3 <= u128(horizon) * 2);
        if (!certified || r > horizon) break;
        seq.terms.push_back(r);
        if (count != 0 && seq.terms.size() == count) break;
    }
    seq.verified_count = seq.terms.size();
    if (count != 0 && seq.verified_count < count) {
        throw IncompleteResult(describe(seq.kind, m) + ": only " + std::to_string(seq.verified_count) + " of " +
                                   std::to_string(count) + " terms certified below " + std::to_string(horizon) +
                                   "; need limit >= " + std::to_string(ramanujan_horizon(count, m)),
                               seq.verified_count);
    }
    return seq;
}

SpecialPrimeSeq labos_primes(const PrimeTable& t, std::uint64_t count, const Multiplier& m) {
    const detail::PrimeSource source(t);
    const auto scan = scan_deficit(source.primes(), t.limit(), m);

    SpecialPrimeSeq seq;
    seq.kind = SeqKind::labos;
    seq.m = m;
    seq.horizon = t.limit();
    seq.certificate = Certificate::first_hit;
    const std::size_t take = count == 0 ? scan.first_hit.size() : std::min<std::size_t>(count, scan.first_hit.size());
    seq.terms.assign(scan.first_hit.begin(), scan.first_hit.begin() + static_cast<std::ptrdiff_t>(take));
    seq.verified_count = seq.terms.size();
    if (count != 0 && seq.verified_count < count) {
        throw IncompleteResult(describe(seq.kind, m) + ": only " + std::to_string(seq.verified_count) + " of " +
                                   std::to_string(count) + " terms found below " + std::to_string(t.limit()) +
                                   "; need limit >= " + std::to_string(labos_horizon(count, m)),
                               seq.verified_count);
    }
    return seq;
}

std::vector<SondowLaishramCheck> verify_sondow_laishram(const SpecialPrimeSeq& seq, const PrimeTable& t) {
    if (seq.kind != SeqKind::ramanujan || !seq.m.is_two()) {
        throw InvalidArgument("verify_sondow_laishram: needs Ramanujan primes with m = 2");
    }
    std::vector<SondowLaishramCheck> out;
    out.reserve(seq.terms.size());
    for (std::uint64_t n = 1; n <= seq.terms.size(); ++n) {
        const std::uint64_t r = seq.terms[n - 1];
        SondowLaishramCheck c{n, std::nullopt, r < t.nth_prime(3 * n)};
        if (n > 1) c.lower_ok = t.nth_prime(2 * n) < r;
        out.push_back(c);
    }
    return out;
}

}  // namespace gapprob
