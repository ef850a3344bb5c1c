#include "gapprob/gap_classify.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "gapprob/error.hpp"
#include "prime_source.hpp"

namespace gapprob {

const char* to_string(GapClass c) noexcept {
    switch (c) {
        case GapClass::initial: return "initial";
        case GapClass::boundary: return "boundary";
        case GapClass::isolated: return "isolated";
        case GapClass::right_only: return "right";
        case GapClass::left_only: return "left";
        case GapClass::central: return "central";
    }
    return "?";
}

namespace {

struct ChunkTotals {
    std::vector<std::uint64_t> histogram;
    std::array<std::uint64_t, kGapClassCount> classes{};
};

}  // namespace

IntervalCensus census(const PrimeTable& t, std::uint64_t limit, const Multiplier& m, unsigned threads) {
    if (limit > t.limit()) {
        throw CoverageError("census: limit " + std::to_string(limit) + " exceeds table limit " +
                                std::to_string(t.limit()),
                            limit);
    }
    IntervalCensus c;
    c.m_ = m;
    c.limit_ = limit;
    {
        const detail::PrimeSource source(t);
        const auto all = source.primes();
        const auto end = std::upper_bound(all.begin(), all.end(), limit);
        c.primes_.assign(all.begin(), end);
    }
    const auto& primes = c.primes_;
    const std::uint64_t num = m.num();
    const std::uint64_t den = m.den();

    // p_{K+1} is the largest prime with m p_{K+1} <= limit.
    const auto fits = std::partition_point(primes.begin(), primes.end(),
                                           [&](std::uint64_t q) { return u128(q) * num <= u128(limit) * den; });
    const auto endpoints = static_cast<std::uint64_t>(fits - primes.begin());
    const std::uint64_t intervals = endpoints >= 2 ? endpoints - 1 : 0;

    // Classified primes lie strictly below m p_{K+1} (or below m p_1 = 2m when no interval fits).
    const std::uint64_t top = endpoints >= 1 ? primes[endpoints - 1] : 2;
    const auto classified_end = std::partition_point(
        primes.begin(), primes.end(), [&](std::uint64_t q) { return u128(q) * den < u128(top) * num; });
    const auto classified = static_cast<std::size_t>(classified_end - primes.begin());
    const u128 top_ceil = m.ceil_mul(top);
    c.covered_through_ = static_cast<std::uint64_t>(std::min<u128>(top_ceil - 1, limit));

    c.classes_.assign(classified, GapClass::initial);
    c.interval_of_.assign(classified, 0);
    c.first_contained_.assign(intervals + 1, 0);
    c.contained_count_.assign(intervals, 0);

    auto run_chunk = [&](std::uint64_t k_begin, std::uint64_t k_end, ChunkTotals& totals) {
        if (k_begin >= k_end) return;
        // first prime with q >= m p_{k_begin}
        std::size_t i = static_cast<std::size_t>(
            std::partition_point(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(classified),
                                 [&](std::uint64_t q) { return u128(q) * den < u128(primes[k_begin - 1]) * num; }) -
            primes.begin());
        for (std::uint64_t k = k_begin; k < k_end; ++k) {
            const u128 lo = u128(primes[k - 1]) * num;
            const u128 hi = u128(primes[k]) * num;
            if (i < classified && u128(primes[i]) * den == lo) {
                c.classes_[i] = GapClass::boundary;
                ++i;
            }
            const std::size_t first = i;
            while (i < classified && u128(primes[i]) * den < hi) ++i;
            const std::size_t n = i - first;
            c.first_contained_[k - 1] = first;
            c.contained_count_[k - 1] = n;
            if (totals.histogram.size() <= n) totals.histogram.resize(n + 1, 0);
            ++totals.histogram[n];
            for (std::size_t j = first; j < i; ++j) {
                GapClass cls = GapClass::central;
                if (n == 1) {
                    cls = GapClass::isolated;
                } else if (j == first) {
                    cls = GapClass::right_only;
                } else if (j + 1 == i) {
                    cls = GapClass::left_only;
                }
                c.classes_[j] = cls;
                c.interval_of_[j] = k;
                ++totals.classes[static_cast<std::size_t>(cls)];
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, intervals / 4096 + 1));
    std::vector<ChunkTotals> totals(workers);
    const std::uint64_t per = (intervals + workers - 1) / std::max<std::uint64_t>(workers, 1);
    if (workers == 1) {
        run_chunk(1, intervals + 1, totals[0]);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t kb = 1 + w * per;
            const std::uint64_t ke = std::min(intervals + 1, kb + per);
            pool.emplace_back([&, kb, ke, w] { run_chunk(kb, ke, totals[w]); });
        }
    }
    if (intervals > 0) c.first_contained_[intervals] = c.first_contained_[intervals - 1] + c.contained_count_[intervals - 1];

    for (const auto& part : totals) {
        if (c.histogram_.size() < part.histogram.size()) c.histogram_.resize(part.histogram.size(), 0);
        for (std::size_t i = 0; i < part.histogram.size(); ++i) c.histogram_[i] += part.histogram[i];
        for (std::size_t j = 0; j < kGapClassCount; ++j) c.class_counts_[j] += part.classes[j];
    }
    // Initial and boundary primes are counted outside the per-interval loop.
    for (GapClass cls : c.classes_) {
        if (cls == GapClass::initial || cls == GapClass::boundary) ++c.class_counts_[static_cast<std::size_t>(cls)];
    }
    return c;
}

IntervalView IntervalCensus::interval(std::uint64_t k) const {
    if (k == 0 || k > interval_count()) {
        throw InvalidArgument("interval: index " + std::to_string(k) + " outside [1, " +
                              std::to_string(interval_count()) + "]");
    }
    return IntervalView{k, primes_[k - 1], primes_[k],
                        std::span(primes_).subspan(first_contained_[k - 1], contained_count_[k - 1])};
}

GapClass classify_prime(const IntervalCensus& c, std::uint64_t p) {
    const auto cls = c.classified_primes();
    const auto it = std::lower_bound(cls.begin(), cls.end(), p);
    if (it == cls.end() || *it != p) {
        const auto all = c.all_primes();
        if (p <= c.limit() && std::binary_search(all.begin(), all.end(), p)) {
            throw InvalidArgument("classify_prime: " + std::to_string(p) + " lies above the classified range (<= " +
                                  std::to_string(c.covered_through()) + ")");
        }
        throw InvalidArgument("classify_prime: " + std::to_string(p) + " is not a prime within the census");
    }
    return c.classes()[static_cast<std::size_t>(it - cls.begin())];
}

namespace {

template <typename Pred>
std::vector<std::uint64_t> select(const IntervalCensus& c, Pred pred) {
    std::vector<std::uint64_t> out;
    const auto primes = c.classified_primes();
    const auto classes = c.classes();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (pred(classes[i])) out.push_back(primes[i]);
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> r_primes(const IntervalCensus& c) { return select(c, is_r_class); }
std::vector<std::uint64_t> l_primes(const IntervalCensus& c) { return select(c, is_l_class); }

std::vector<std::uint64_t> pseudo_primes(const IntervalCensus& c, const SpecialPrimeSeq& s) {
    if (!(s.m == c.m())) {
        throw InvalidArgument("pseudo_primes: sequence multiplier " + s.m.str() + " differs from census multiplier " +
                              c.m().str());
    }
    if (s.terms.empty()) throw InvalidArgument("pseudo_primes: empty special-prime sequence");
    const std::uint64_t bound = std::min(c.covered_through(), s.complete_through());
    const auto side = s.kind == SeqKind::ramanujan ? r_primes(c) : l_primes(c);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : side) {
        if (p > bound) break;
        if (!std::binary_search(s.terms.begin(), s.terms.end(), p)) out.push_back(p);
    }
    return out;
}

std::vector<std::uint64_t> r_star_primes(const IntervalCensus& c) {
    std::vector<std::uint64_t> out;
    const auto classes = c.classes();
    for (std::uint64_t k = 1; k <= c.interval_count(); ++k) {
        const auto iv = c.interval(k);
        const std::size_t first = static_cast<std::size_t>(iv.contained.data() - c.all_primes().data());
        for (std::size_t j = 0; j < iv.contained.size(); ++j) {
            if (is_r_class(classes[first + j])) {
                out.push_back(iv.lower_prime);
                break;
            }
        }
    }
    return out;
}

InterleavingResult check_interleaving(const IntervalCensus& c) {
    constexpr std::size_t kMaxReported = 16;
    const auto r = r_primes(c);
    const auto l = l_primes(c);
    InterleavingResult res;
    const std::size_t n = std::min(r.size(), l.size());
    auto report = [&](std::size_t i) {
        ++res.violation_count;
        if (res.violations.size() < kMaxReported) {
            std::optional<std::uint64_t> next;
            if (i + 1 < r.size()) next = r[i + 1];
            res.violations.push_back({i + 1, r[i], l[i], next});
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        const bool first_ok = r[i] <= l[i];
        const bool second_ok = i + 1 >= r.size() || l[i] <= r[i + 1];
        if (!first_ok || !second_ok) report(i);
        ++res.pairs_checked;
    }
    if (r.size() != l.size()) {
        // Each interval with j >= 2 primes adds j - 1 terms to both sides.
        ++res.violation_count;
    }
    res.ok = res.violation_count == 0;
    return res;
}

bool r_prime_by_pi(const PrimeTable& t, std::uint64_t p, const Multiplier& m) {
    if (!t.is_prime(p)) throw InvalidArgument("r_prime_by_pi: " + std::to_string(p) + " is not prime");
    const std::uint64_t next = t.nth_prime(t.pi(p) + 1);
    return t.pi_scaled(p, m) == t.pi_scaled(next, m);
}

bool l_prime_by_pi(const PrimeTable& t, std::uint64_t p, const Multiplier& m) {
    if (!t.is_prime(p)) throw InvalidArgument("l_prime_by_pi: " + std::to_string(p) + " is not prime");
    const std::uint64_t n = t.pi(p);
    if (n < 2) return false;
    const std::uint64_t prev = t.nth_prime(n - 1);
    return t.pi_scaled(prev, m) == t.pi_scaled(p, m);
}

CrossCheckResult cross_check_characterizations(const PrimeTable& t, const IntervalCensus& c, std::uint64_t up_to) {
    CrossCheckResult res;
    const auto primes = c.classified_primes();
    const auto classes = c.classes();
    const auto& m = c.m();
    for (std::size_t i = 0; i < primes.size() && primes[i] <= up_to; ++i) {
        const GapClass cls = classes[i];
        if (cls == GapClass::initial || cls == GapClass::boundary) continue;
        // the successor of the last classified prime may sit on a boundary or beyond the census
        if (i + 1 >= primes.size()) break;
        ++res.checked;
        const std::uint64_t p = primes[i];
        const std::uint64_t prev = primes[i - 1];
        const std::uint64_t next = primes[i + 1];
        const bool r_pi = t.pi_scaled(p, m) == t.pi_scaled(next, m);
        const bool l_pi = t.pi_scaled(prev, m) == t.pi_scaled(p, m);
        if (r_pi != is_r_class(cls) || l_pi != is_l_class(cls)) {
            ++res.disagreements;
            if (!res.first_disagreement) res.first_disagreement = p;
        }
    }
    return res;
}

}  // namespace gapprob
