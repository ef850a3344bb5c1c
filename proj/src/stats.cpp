#include "gapprob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapprob/error.hpp"
#include "prime_source.hpp"

namespace gapprob {

double lambda_residual(double lambda, double m) noexcept {
    return (1.0 - lambda) * std::log1p(-lambda) + lambda * lambda / m;
}

double solve_lambda(double m, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("solve_lambda: tol must be positive");
    if (tol < 1e-15) throw InvalidArgument("solve_lambda: tol below 1e-15 is not attainable in double precision");
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("solve_lambda: m must be positive and finite");

    // f < 0 just above 0 (f ~ -l) and f -> 1/m > 0 as l -> 1.
    double lo = 1e-9;
    double hi = 1.0 - 1e-15;
    if (lambda_residual(lo, m) >= 0 || lambda_residual(hi, m) <= 0) {
        throw Error(ErrorKind::verification, "solve_lambda: no sign change in bracket for m = " + std::to_string(m));
    }
    const double width = std::min(1e-12, tol);
    while (hi - lo > width) {
        const double mid = lo + (hi - lo) / 2;
        if (lambda_residual(mid, m) < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = lo + (hi - lo) / 2;
    for (int step = 0; step < 2; ++step) {
        // f'(l) = -ln(1 - l) - 1 + 2 l / m
        const double d = -std::log1p(-x) - 1.0 + 2.0 * x / m;
        if (d == 0.0) break;
        const double next = x - lambda_residual(x, m) / d;
        if (next <= lo || next >= hi) break;
        x = next;
    }
    if (!(std::abs(lambda_residual(x, m)) < tol)) {
        throw Error(ErrorKind::verification, "solve_lambda: residual " + std::to_string(lambda_residual(x, m)) +
                                                 " not below tol");
    }
    return x;
}

double solve_lambda(const Multiplier& m, double tol) { return solve_lambda(m.value(), tol); }

ProbSet theoretical_probabilities(const Multiplier& m, double tol) {
    ProbSet p;
    p.m = m;
    const double mv = m.value();
    const double l = solve_lambda(m, tol);
    p.lambda = l;
    p.p_S = 1.0 - l / mv;
    p.p_right = (1.0 + 1.0 / mv) * l - 1.0;
    p.p_central = 2.0 - (1.0 + 2.0 / mv) * l;
    p.p_isolated = 1.0 - l;
    p.p_r_star = p.p_S * l;
    p.residual = lambda_residual(l, mv);
    p.p_r_alt = 1.0 + (1.0 - l) / l * std::log1p(-l);
    return p;
}

namespace {

// Fraction of `side` (ascending, bounded by `range`) present in `terms`.
double share_in(const std::vector<std::uint64_t>& side, const std::vector<std::uint64_t>& terms, std::uint64_t range) {
    std::uint64_t total = 0, hit = 0;
    for (auto p : side) {
        if (p > range) break;
        ++total;
        hit += std::binary_search(terms.begin(), terms.end(), p);
    }
    return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace

DensityReport density_report(const IntervalCensus& c, const SpecialPrimeSeq& ramanujan, const SpecialPrimeSeq& labos,
                             const ProbSet& probs) {
    if (!(ramanujan.m == c.m()) || !(labos.m == c.m()) || !(probs.m == c.m())) {
        throw InvalidArgument("density_report: inputs use different multipliers (census " + c.m().str() +
                              ", ramanujan " + ramanujan.m.str() + ", labos " + labos.m.str() + ", model " +
                              probs.m.str() + ")");
    }
    if (ramanujan.kind != SeqKind::ramanujan || labos.kind != SeqKind::labos) {
        throw InvalidArgument("density_report: expected a Ramanujan and a Labos sequence");
    }
    if (c.interval_count() == 0) throw InvalidArgument("density_report: census holds no interval");

    DensityReport r;
    r.m = c.m();
    r.limit = c.limit();
    r.classified = c.classified_primes().size();
    r.intervals = c.interval_count();
    r.theoretical = probs;

    const double n = static_cast<double>(r.classified);
    auto share = [&](std::uint64_t count) { return static_cast<double>(count) / n; };
    const auto right = c.count(GapClass::right_only);
    const auto left = c.count(GapClass::left_only);
    const auto central = c.count(GapClass::central);
    const auto isolated = c.count(GapClass::isolated);
    const auto h = c.histogram();

    auto& e = r.empirical;
    e["A1"] = 1.0 - static_cast<double>(h[0]) / static_cast<double>(r.intervals);
    e["R"] = share(right + central);
    e["L"] = share(left + central);
    e["central"] = share(central);
    e["right"] = share(right);
    e["left"] = share(left);
    e["isolated"] = share(isolated);
    e["initial_share"] = share(c.count(GapClass::initial) + c.count(GapClass::boundary));
    e["r_star"] = static_cast<double>(r_star_primes(c).size()) / static_cast<double>(r.intervals);
    e["a1_from_r"] = c.m().value() * (1.0 - e["R"]);

    r.special_range = std::min({c.covered_through(), ramanujan.complete_through(), labos.complete_through()});
    e["ramanujan_share"] = share_in(r_primes(c), ramanujan.terms, r.special_range);
    e["labos_share"] = share_in(l_primes(c), labos.terms, r.special_range);

    auto& d = r.deviations;
    d["A1"] = std::abs(e["A1"] - probs.lambda);
    d["R"] = std::abs(e["R"] - probs.p_S);
    d["L"] = std::abs(e["L"] - probs.p_S);
    d["central"] = std::abs(e["central"] - probs.p_central);
    d["right"] = std::abs(e["right"] - probs.p_right);
    d["left"] = std::abs(e["left"] - probs.p_right);
    d["isolated"] = std::abs(e["isolated"] - probs.p_isolated);
    d["r_star"] = std::abs(e["r_star"] - probs.p_r_star);
    d["a1_from_r"] = std::abs(e["a1_from_r"] - e["A1"]);
    return r;
}

double r_fraction_of_first(const IntervalCensus& c, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("r_fraction_of_first: n must be positive");
    std::uint64_t seen = 0, r = 0;
    for (GapClass cls : c.classes()) {
        if (cls == GapClass::initial || cls == GapClass::boundary) continue;
        ++seen;
        r += is_r_class(cls);
        if (seen == n) return static_cast<double>(r) / static_cast<double>(n);
    }
    throw CoverageError("r_fraction_of_first: census classifies only " + std::to_string(seen) + " of " +
                            std::to_string(n) + " primes",
                        static_cast<std::uint64_t>(c.m().ceil_mul(detail::nth_prime_upper(n + 3))));
}

}  // namespace gapprob
