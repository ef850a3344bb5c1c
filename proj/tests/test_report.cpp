#include <sstream>

#include "doctest.h"
#include "gapprob/report.hpp"

using namespace gapprob;
using report::json;

namespace {

const PrimeTable& table() {
    static const PrimeTable t = PrimeTable::build(100'000);
    return t;
}

}  // namespace

TEST_CASE("sequence exports") {
    const auto seq = ramanujan_primes(table(), 5);
    std::ostringstream csv, bfile;
    report::write_sequence_csv(csv, seq);
    report::write_bfile(bfile, seq);
    CHECK(csv.str() == "index,term\n1,2\n2,11\n3,17\n4,29\n5,41\n");
    CHECK(bfile.str() == "1 2\n2 11\n3 17\n4 29\n5 41\n");
    const auto j = report::to_json(seq);
    CHECK(j.at("kind") == "ramanujan");
    CHECK(j.at("m") == "2/1");
    CHECK(j.at("certificate") == "laishram-bound");
    CHECK(j.at("terms") == json::array({2, 11, 17, 29, 41}));
}

TEST_CASE("census exports") {
    const auto c = census(table(), 14);
    const auto j = report::census_json(c);
    CHECK(j.at("histogram") == json::array({0, 2, 1}));
    CHECK(j.at("intervals") == 3);
    CHECK(j.at("class_counts").at("initial") == 2);
    CHECK(j.at("class_counts").at("right") == 1);
    std::ostringstream h, cls;
    report::write_histogram_csv(h, c);
    report::write_classification_csv(cls, c);
    CHECK(h.str() == "i,h_i\n0,0\n1,2\n2,1\n");
    CHECK(cls.str() ==
          "prime,interval_k,class\n2,0,initial\n3,0,initial\n5,1,isolated\n7,2,isolated\n11,3,right\n13,3,left\n");
}

TEST_CASE("Bertrand export") {
    const auto j = report::to_json(sieve_construct(table(), 4));
    CHECK(j.at("m") == "2/1");
    CHECK(j.at("seeds") == json::array({2, 11, 17, 29}));
    REQUIRE(j.at("chains").size() == 4);
    CHECK(j.at("chains")[0][0] == 2);
    CHECK(j.at("chains")[3][0] == 29);
}

TEST_CASE("random-model export") {
    const auto s = simulate(50'000, 5);
    const auto e = census_on_sample(s);
    const auto j = report::to_json(s, e);
    for (const char* key : {"limit", "seed", "sample_size", "estimates", "std_errors"}) CHECK(j.contains(key));
    CHECK(j.at("sample_size") == s.pseudo_primes.size());
    CHECK(j.at("estimates").at("trials") == e.trials);
    std::ostringstream raw;
    report::write_raw_sample(raw, s);
    CHECK(raw.str().rfind("3\n5\n7\n", 0) == 0);
    std::ostringstream csv;
    report::write_estimate_csv(csv, e);
    CHECK(csv.str().rfind("h,exact,at_least,", 0) == 0);
}

TEST_CASE("density report export has the fixed key set") {
    const Multiplier two;
    const auto c = census(table(), 50'000);
    const auto r = density_report(c, ramanujan_primes(table(), 0), labos_primes(table(), 0),
                                  theoretical_probabilities(two));
    const auto j = report::to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"deviations", "empirical", "limit", "m", "theoretical"});
    CHECK(j.at("m") == "2/1");
    for (const char* key : {"A1", "R", "L", "central", "right", "left", "isolated", "r_star", "ramanujan_share"}) {
        CAPTURE(key);
        CHECK(j.at("empirical").contains(key));
    }
    CHECK(j.at("theoretical").at("lambda").get<double>() == doctest::Approx(r.theoretical.lambda));
    std::ostringstream csv;
    report::write_density_csv(csv, r);
    CHECK(csv.str().rfind("section,key,value\nmeta,m,2/1\n", 0) == 0);
    CHECK(csv.str().find("theoretical,p_S,") != std::string::npos);
}
