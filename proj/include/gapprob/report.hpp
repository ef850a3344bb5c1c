#pragma once

#include <ostream>

#include "json.hpp"

#include "gapprob/bertrand_sieve.hpp"
#include "gapprob/cramer_model.hpp"
#include "gapprob/gap_classify.hpp"
#include "gapprob/special_primes.hpp"
#include "gapprob/stats.hpp"

// Machine-readable exports. JSON objects keep a fixed key set per type so
// that outputs can be diffed across runs.
namespace gapprob::report {

using nlohmann::json;

json to_json(const SpecialPrimeSeq& s);
// "index,term" with a header row
void write_sequence_csv(std::ostream& os, const SpecialPrimeSeq& s);
// OEIS b-file: "n a(n)" per line, no header
void write_bfile(std::ostream& os, const SpecialPrimeSeq& s);

// {m, limit, intervals, classified, covered_through, histogram, class_counts}
json census_json(const IntervalCensus& c);
// "i,h_i"
void write_histogram_csv(std::ostream& os, const IntervalCensus& c);
// "prime,interval_k,class" for every classified prime
void write_classification_csv(std::ostream& os, const IntervalCensus& c);

// {m, seeds, chains, merges}
json to_json(const SieveResult& r);
json to_json(const BertrandChain& c);

// {limit, seed, sample_size, estimates, std_errors}
json to_json(const CramerSample& s, const CensusEstimate& e);
// one sample element per line
void write_raw_sample(std::ostream& os, const CramerSample& s);
// "h,exact,at_least,p_exact,p_at_least,se_exact,se_at_least"
void write_estimate_csv(std::ostream& os, const CensusEstimate& e);

json to_json(const ProbSet& p);
// {"m", "limit", "empirical", "theoretical", "deviations"}
json to_json(const DensityReport& r);
// "section,key,value", one metric per row
void write_density_csv(std::ostream& os, const DensityReport& r);

}  // namespace gapprob::report
