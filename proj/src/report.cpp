#include "gapprob/report.hpp"

namespace gapprob::report {

namespace {

json class_counts_json(const IntervalCensus& c) {
    json out = json::object();
    for (std::size_t i = 0; i < kGapClassCount; ++i) out[to_string(static_cast<GapClass>(i))] = c.class_counts()[i];
    return out;
}

}  // namespace

json to_json(const SpecialPrimeSeq& s) {
    return json{{"kind", to_string(s.kind)},
                {"m", s.m.str()},
                {"certificate", to_string(s.certificate)},
                {"verified_count", s.verified_count},
                {"horizon", s.horizon},
                {"terms", s.terms}};
}

void write_sequence_csv(std::ostream& os, const SpecialPrimeSeq& s) {
    os << "index,term\n";
    for (std::size_t i = 0; i < s.terms.size(); ++i) os << i + 1 << ',' << s.terms[i] << '\n';
}

void write_bfile(std::ostream& os, const SpecialPrimeSeq& s) {
    for (std::size_t i = 0; i < s.terms.size(); ++i) os << i + 1 << ' ' << s.terms[i] << '\n';
}

json census_json(const IntervalCensus& c) {
    const auto h = c.histogram();
    return json{{"m", c.m().str()},
                {"limit", c.limit()},
                {"intervals", c.interval_count()},
                {"classified", c.classified_primes().size()},
                {"covered_through", c.covered_through()},
                {"histogram", std::vector<std::uint64_t>(h.begin(), h.end())},
                {"class_counts", class_counts_json(c)}};
}

void write_histogram_csv(std::ostream& os, const IntervalCensus& c) {
    os << "i,h_i\n";
    const auto h = c.histogram();
    for (std::size_t i = 0; i < h.size(); ++i) os << i << ',' << h[i] << '\n';
}

void write_classification_csv(std::ostream& os, const IntervalCensus& c) {
    os << "prime,interval_k,class\n";
    const auto primes = c.classified_primes();
    const auto classes = c.classes();
    const auto where = c.interval_of();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        os << primes[i] << ',' << where[i] << ',' << to_string(classes[i]) << '\n';
    }
}

json to_json(const BertrandChain& c) { return json{{"seed", c.seed}, {"m", c.m.str()}, {"terms", c.terms}}; }

json to_json(const SieveResult& r) {
    json chains = json::array();
    for (const auto& c : r.chains) chains.push_back(c.terms);
    json merges = json::array();
    for (const auto& mg : r.merges) {
        merges.push_back({{"seed", r.seeds[mg.chain]}, {"joins_seed", r.seeds[mg.into]}, {"at", mg.at}});
    }
    return json{{"m", r.m.str()}, {"seeds", r.seeds}, {"chains", chains}, {"merges", merges}, {"stalled", r.stalled}};
}

json to_json(const CramerSample& s, const CensusEstimate& e) {
    return json{{"limit", s.limit},
                {"seed", s.seed},
                {"sample_size", s.pseudo_primes.size()},
                {"estimates",
                 {{"trials", e.trials},
                  {"exact_counts", e.exact},
                  {"at_least_counts", e.at_least},
                  {"p_hat_A1", e.p_hat_A1},
                  {"p_hat_Ah", e.p_hat_Ah},
                  {"p_hat_exact_h", e.p_hat_exact_h}}},
                {"std_errors", {{"Ah", e.se_Ah}, {"exact_h", e.se_exact_h}}}};
}

void write_raw_sample(std::ostream& os, const CramerSample& s) {
    for (auto v : s.pseudo_primes) os << v << '\n';
}

void write_estimate_csv(std::ostream& os, const CensusEstimate& e) {
    os << "h,exact,at_least,p_exact,p_at_least,se_exact,se_at_least\n";
    for (std::size_t h = 0; h < e.exact.size(); ++h) {
        os << h << ',' << e.exact[h] << ',' << e.at_least[h] << ',' << json(e.p_hat_exact_h[h]).dump() << ','
           << json(e.p_hat_Ah[h]).dump() << ',' << json(e.se_exact_h[h]).dump() << ',' << json(e.se_Ah[h]).dump()
           << '\n';
    }
}

json to_json(const ProbSet& p) {
    return json{{"m", p.m.str()},
                {"lambda", p.lambda},
                {"p_S", p.p_S},
                {"p_right", p.p_right},
                {"p_central", p.p_central},
                {"p_isolated", p.p_isolated},
                {"p_r_star", p.p_r_star},
                {"residual", p.residual},
                {"p_r_alt", p.p_r_alt}};
}

json to_json(const DensityReport& r) {
    json theoretical = to_json(r.theoretical);
    theoretical.erase("m");
    return json{{"m", r.m.str()},
                {"limit", r.limit},
                {"empirical", r.empirical},
                {"theoretical", theoretical},
                {"deviations", r.deviations}};
}

void write_density_csv(std::ostream& os, const DensityReport& r) {
    os << "section,key,value\n";
    os << "meta,m," << r.m.str() << '\n';
    os << "meta,limit," << r.limit << '\n';
    os << "meta,classified," << r.classified << '\n';
    os << "meta,intervals," << r.intervals << '\n';
    os << "meta,special_range," << r.special_range << '\n';
    for (const auto& [k, v] : r.empirical) os << "empirical," << k << ',' << json(v).dump() << '\n';
    const auto theoretical = to_json(r.theoretical);
    for (const auto& [k, v] : theoretical.items()) {
        if (k != "m") os << "theoretical," << k << ',' << v.dump() << '\n';
    }
    for (const auto& [k, v] : r.deviations) os << "deviations," << k << ',' << json(v).dump() << '\n';
}

}  // namespace gapprob::report
