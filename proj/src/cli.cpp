#include "gapprob/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <new>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gapprob/bertrand_sieve.hpp"
#include "gapprob/cramer_model.hpp"
#include "gapprob/error.hpp"
#include "gapprob/gap_classify.hpp"
#include "gapprob/prime_table.hpp"
#include "gapprob/report.hpp"
#include "gapprob/special_primes.hpp"
#include "gapprob/stats.hpp"

namespace gapprob::cli {

namespace {

using report::json;

struct RunConfig {
    std::string command;
    std::optional<std::uint64_t> limit;
    std::optional<std::uint64_t> count;
    std::string m_text = "2";
    Multiplier m;
    std::uint64_t seed = 1;
    double tol = 1e-12;
    std::string format = "text";
    std::optional<unsigned> threads;
    std::optional<std::string> memory_cap;
    std::optional<std::uint64_t> start;
    std::optional<std::uint64_t> len;
    std::optional<std::uint64_t> prime;
    std::string side = "r";
};

// "4G", "512M", "64k" or plain bytes; binary multiples.
std::uint64_t parse_bytes(const std::string& text) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw InvalidArgument("memory cap: cannot parse '" + text + "'");
    const std::string suffix(ptr, last);
    int shift = 0;
    if (suffix.empty() || suffix == "B" || suffix == "b") {
        shift = 0;
    } else if (suffix == "k" || suffix == "K") {
        shift = 10;
    } else if (suffix == "m" || suffix == "M") {
        shift = 20;
    } else if (suffix == "g" || suffix == "G") {
        shift = 30;
    } else {
        throw InvalidArgument("memory cap: unknown suffix '" + suffix + "'");
    }
    if (shift > 0 && value > (~std::uint64_t{0} >> shift)) throw InvalidArgument("memory cap: '" + text + "' overflows");
    return value << shift;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

class Runner {
public:
    Runner(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {
        cfg_.m = Multiplier::parse(cfg_.m_text);
        if (!cfg_.threads) {
            if (const char* env = std::getenv("GAPPROB_THREADS")) cfg_.threads = parse_unsigned(env, "GAPPROB_THREADS");
        }
        if (!cfg_.memory_cap) {
            if (const char* env = std::getenv("GAPPROB_MEMORY_CAP")) cfg_.memory_cap = env;
        }
        build_.threads = cfg_.threads.value_or(0);
        if (cfg_.memory_cap) build_.memory_cap = parse_bytes(*cfg_.memory_cap);
    }

    void execute() {
        static const std::map<std::string, void (Runner::*)()> table = {
            {"primes", &Runner::primes},         {"ramanujan", &Runner::special},  {"labos", &Runner::special},
            {"classify", &Runner::classify},     {"census", &Runner::census_cmd},  {"pseudo", &Runner::pseudo},
            {"rstar", &Runner::rstar},           {"interleave", &Runner::interleave},
            {"bertrand", &Runner::bertrand},     {"verify-thm1", &Runner::verify_thm1},
            {"lambda", &Runner::lambda},         {"probs", &Runner::probs},        {"densities", &Runner::densities},
            {"cramer", &Runner::cramer},
        };
        (this->*table.at(cfg_.command))();
    }

private:
    static unsigned parse_unsigned(const std::string& text, const char* what) {
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw InvalidArgument(std::string(what) + ": cannot parse '" + text + "'");
        }
        return v;
    }

    void allow_formats(std::initializer_list<const char*> allowed) const {
        for (const char* f : allowed) {
            if (cfg_.format == f) return;
        }
        std::string list;
        for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
        throw InvalidArgument(cfg_.command + ": format '" + cfg_.format + "' not supported (use " + list + ")");
    }

    std::uint64_t require_limit() const {
        if (!cfg_.limit) throw InvalidArgument(cfg_.command + ": --limit is required");
        return *cfg_.limit;
    }

    unsigned threads() const { return cfg_.threads.value_or(0); }

    PrimeTable table(std::uint64_t limit) const { return PrimeTable::build(std::max<std::uint64_t>(limit, 2), build_); }

    // Builds a table at `limit` and doubles it while `fn` reports missing coverage.
    template <typename Fn>
    auto growing(std::uint64_t limit, Fn fn) const {
        for (;;) {
            const auto t = table(limit);
            try {
                return fn(t);
            } catch (const IncompleteResult&) {
            } catch (const CoverageError&) {
            }
            if (limit > (std::uint64_t{1} << 62)) throw CoverageError(cfg_.command + ": limit overflow", limit);
            limit *= 2;
        }
    }

    void emit(const json& j) const { out_ << j.dump(2) << '\n'; }

    void primes() {
        allow_formats({"text", "json", "csv"});
        std::vector<std::uint64_t> list;
        std::uint64_t limit = 0;
        if (cfg_.count && !cfg_.limit) {
            const std::uint64_t n = *cfg_.count;
            list = growing(std::max<std::uint64_t>(n * 20, 100), [&](const PrimeTable& t) {
                if (t.prime_count() < n) throw CoverageError("primes: too few", 0);
                const auto all = t.primes();
                return std::vector<std::uint64_t>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
            });
            limit = list.empty() ? 0 : list.back();
        } else {
            limit = require_limit();
            const auto t = table(limit);
            const auto all = t.primes();
            const auto end = std::upper_bound(all.begin(), all.end(), limit);
            list.assign(all.begin(), end);
            if (cfg_.count && list.size() > *cfg_.count) list.resize(*cfg_.count);
        }
        if (cfg_.format == "json") {
            emit(json{{"limit", limit}, {"count", list.size()}, {"primes", list}});
        } else if (cfg_.format == "csv") {
            out_ << "index,prime\n";
            for (std::size_t i = 0; i < list.size(); ++i) out_ << i + 1 << ',' << list[i] << '\n';
        } else {
            for (auto p : list) out_ << p << '\n';
        }
    }

    SpecialPrimeSeq sequence(SeqKind kind, std::uint64_t count) const {
        const auto make = [&](const PrimeTable& t) {
            return kind == SeqKind::ramanujan ? ramanujan_primes(t, count, cfg_.m) : labos_primes(t, count, cfg_.m);
        };
        if (cfg_.limit) return make(table(*cfg_.limit));
        if (count == 0) throw InvalidArgument(cfg_.command + ": give --count or --limit");
        const auto horizon = kind == SeqKind::ramanujan ? ramanujan_horizon(count, cfg_.m) : labos_horizon(count, cfg_.m);
        return growing(horizon, make);
    }

    void special() {
        allow_formats({"text", "json", "csv", "bfile"});
        const auto kind = cfg_.command == "ramanujan" ? SeqKind::ramanujan : SeqKind::labos;
        const auto seq = sequence(kind, cfg_.count.value_or(0));
        if (cfg_.format == "json") {
            emit(report::to_json(seq));
        } else if (cfg_.format == "csv") {
            report::write_sequence_csv(out_, seq);
        } else if (cfg_.format == "bfile") {
            report::write_bfile(out_, seq);
        } else {
            for (auto p : seq.terms) out_ << p << '\n';
        }
    }

    void classify() {
        allow_formats({"text", "json", "csv"});
        if (cfg_.prime) {
            const std::uint64_t p = *cfg_.prime;
            const std::uint64_t limit = cfg_.limit.value_or(static_cast<std::uint64_t>(cfg_.m.ceil_mul(p)));
            const auto t = table(limit);
            const auto c = census(t, limit, cfg_.m, threads());
            const auto cls = classify_prime(c, p);
            const auto idx = static_cast<std::size_t>(
                std::lower_bound(c.classified_primes().begin(), c.classified_primes().end(), p) -
                c.classified_primes().begin());
            const auto k = c.interval_of()[idx];
            if (cfg_.format == "json") {
                emit(json{{"m", cfg_.m.str()}, {"prime", p}, {"interval_k", k}, {"class", to_string(cls)}});
            } else if (cfg_.format == "csv") {
                out_ << "prime,interval_k,class\n" << p << ',' << k << ',' << to_string(cls) << '\n';
            } else {
                out_ << to_string(cls) << '\n';
            }
            return;
        }
        const std::uint64_t limit = require_limit();
        const auto t = table(limit);
        const auto c = census(t, limit, cfg_.m, threads());
        if (cfg_.format == "json") {
            json rows = json::array();
            const auto primes = c.classified_primes();
            for (std::size_t i = 0; i < primes.size(); ++i) {
                rows.push_back({{"prime", primes[i]}, {"interval_k", c.interval_of()[i]},
                                {"class", to_string(c.classes()[i])}});
            }
            emit(json{{"m", cfg_.m.str()}, {"limit", limit}, {"covered_through", c.covered_through()}, {"primes", rows}});
        } else if (cfg_.format == "csv") {
            report::write_classification_csv(out_, c);
        } else {
            const auto primes = c.classified_primes();
            for (std::size_t i = 0; i < primes.size(); ++i) {
                out_ << primes[i] << ' ' << c.interval_of()[i] << ' ' << to_string(c.classes()[i]) << '\n';
            }
        }
    }

    void census_cmd() {
        allow_formats({"text", "json", "csv"});
        const std::uint64_t limit = require_limit();
        const auto t = table(limit);
        const auto c = census(t, limit, cfg_.m, threads());
        if (cfg_.format == "json") {
            emit(report::census_json(c));
        } else if (cfg_.format == "csv") {
            report::write_histogram_csv(out_, c);
        } else {
            out_ << "intervals " << c.interval_count() << '\n';
            const auto h = c.histogram();
            for (std::size_t i = 0; i < h.size(); ++i) out_ << "h" << i << ' ' << h[i] << '\n';
            for (std::size_t i = 0; i < kGapClassCount; ++i) {
                out_ << to_string(static_cast<GapClass>(i)) << ' ' << c.class_counts()[i] << '\n';
            }
        }
    }

    void print_list(const std::vector<std::uint64_t>& list, const char* name, json meta) const {
        if (cfg_.format == "json") {
            meta[name] = list;
            emit(meta);
        } else if (cfg_.format == "csv") {
            out_ << "index," << "prime\n";
            for (std::size_t i = 0; i < list.size(); ++i) out_ << i + 1 << ',' << list[i] << '\n';
        } else {
            for (auto p : list) out_ << p << '\n';
        }
    }

    void pseudo() {
        allow_formats({"text", "json", "csv"});
        if (cfg_.side != "r" && cfg_.side != "l") throw InvalidArgument("pseudo: --side must be r or l");
        const std::uint64_t limit = require_limit();
        // room for the special primes to be complete through the census range
        const auto t = table(2 * limit);
        const auto c = census(t, limit, cfg_.m, threads());
        const auto seq = cfg_.side == "r" ? ramanujan_primes(t, 0, cfg_.m) : labos_primes(t, 0, cfg_.m);
        const auto list = pseudo_primes(c, seq);
        const std::uint64_t through = std::min(c.covered_through(), seq.complete_through());
        print_list(list, "pseudo_primes",
                   json{{"m", cfg_.m.str()}, {"side", cfg_.side}, {"limit", limit}, {"complete_through", through}});
    }

    void rstar() {
        allow_formats({"text", "json", "csv"});
        const std::uint64_t limit = require_limit();
        const auto t = table(limit);
        const auto c = census(t, limit, cfg_.m, threads());
        print_list(r_star_primes(c), "r_star_primes", json{{"m", cfg_.m.str()}, {"limit", limit}});
    }

    void interleave() {
        allow_formats({"text", "json"});
        const std::uint64_t limit = require_limit();
        const auto t = table(limit);
        const auto c = census(t, limit, cfg_.m, threads());
        const auto res = check_interleaving(c);
        if (cfg_.format == "json") {
            json v = json::array();
            for (const auto& x : res.violations) {
                v.push_back({{"index", x.index}, {"r", x.r}, {"l", x.l}, {"next_r", x.next_r ? json(*x.next_r) : json()}});
            }
            emit(json{{"m", cfg_.m.str()},
                      {"limit", limit},
                      {"ok", res.ok},
                      {"pairs_checked", res.pairs_checked},
                      {"violation_count", res.violation_count},
                      {"violations", v}});
        } else if (res.ok) {
            out_ << "ok " << res.pairs_checked << " pairs\n";
        } else {
            for (const auto& x : res.violations) {
                out_ << "violation i=" << x.index << " R=" << x.r << " L=" << x.l;
                if (x.next_r) out_ << " next_R=" << *x.next_r;
                out_ << '\n';
            }
        }
        if (!res.ok) {
            throw Error(ErrorKind::verification,
                        "interleaving violated " + std::to_string(res.violation_count) + " times");
        }
    }

    void bertrand() {
        allow_formats({"text", "json"});
        if (cfg_.start) {
            const std::uint64_t len = cfg_.len.value_or(10);
            const auto chain = cfg_.limit ? bertrand_chain(table(*cfg_.limit), *cfg_.start, len, cfg_.m)
                                          : growing(std::max<std::uint64_t>(2 * *cfg_.start + 16, 64),
                                                    [&](const PrimeTable& t) {
                                                        return bertrand_chain(t, *cfg_.start, len, cfg_.m);
                                                    });
            if (cfg_.format == "json") {
                emit(report::to_json(chain));
            } else {
                for (auto p : chain.terms) out_ << p << '\n';
            }
            return;
        }
        if (!cfg_.count) throw InvalidArgument("bertrand: give --start (one chain) or --count (sieve seeds)");
        const std::uint64_t count = *cfg_.count;
        const auto make = [&](const PrimeTable& t) { return sieve_construct(t, count, cfg_.m); };
        const auto res = cfg_.limit ? make(table(*cfg_.limit)) : growing(sieve_horizon(count, cfg_.m), make);
        if (cfg_.format == "json") {
            emit(report::to_json(res));
        } else {
            for (auto p : res.seeds) out_ << p << '\n';
        }
    }

    void verify_thm1() {
        allow_formats({"text", "json"});
        const std::uint64_t count = cfg_.count.value_or(1000);
        if (!cfg_.m.is_two()) throw InvalidArgument("verify-thm1: only defined for m = 2");
        const auto make = [&](const PrimeTable& t) { return verify_seed_identity(t, count); };
        const auto res = cfg_.limit ? make(table(*cfg_.limit)) : growing(sieve_horizon(count), make);
        if (cfg_.format == "json") {
            emit(json{{"ok", res.ok},
                      {"count", res.count},
                      {"matched", res.matched},
                      {"first_mismatch", res.first_mismatch ? json(*res.first_mismatch) : json()},
                      {"convention", "2 prepended to the R-primes"},
                      {"seeds", res.seeds},
                      {"r_sequence", res.r_sequence}});
        } else if (res.ok) {
            out_ << "ok " << res.matched << '/' << res.count << '\n';
        } else {
            const std::size_t i = *res.first_mismatch - 1;
            out_ << "mismatch at " << *res.first_mismatch << ": seed " << res.seeds[i] << ", R-sequence "
                 << res.r_sequence[i] << '\n';
        }
        if (!res.ok) {
            throw Error(ErrorKind::verification,
                        "verify-thm1: sequences differ at index " + std::to_string(*res.first_mismatch));
        }
    }

    void lambda() {
        allow_formats({"text", "json"});
        const double l = solve_lambda(cfg_.m, cfg_.tol);
        if (cfg_.format == "json") {
            emit(json{{"m", cfg_.m.str()}, {"lambda", l}, {"residual", lambda_residual(l, cfg_.m.value())}});
        } else {
            out_ << std::fixed << std::setprecision(12) << l << '\n';
            out_ << std::defaultfloat;
        }
    }

    void probs() {
        allow_formats({"text", "json"});
        const auto p = theoretical_probabilities(cfg_.m, cfg_.tol);
        if (cfg_.format == "json") {
            emit(report::to_json(p));
        } else {
            const auto j = report::to_json(p);
            for (const auto& [k, v] : j.items()) {
                if (k != "m") out_ << k << ' ' << fmt(v.get<double>()) << '\n';
            }
        }
    }

    void densities() {
        allow_formats({"text", "json", "csv"});
        const std::uint64_t limit = require_limit();
        const auto t = table(2 * limit);
        const auto c = census(t, limit, cfg_.m, threads());
        const auto r = density_report(c, ramanujan_primes(t, 0, cfg_.m), labos_primes(t, 0, cfg_.m),
                                      theoretical_probabilities(cfg_.m, cfg_.tol));
        if (cfg_.format == "json") {
            emit(report::to_json(r));
        } else if (cfg_.format == "csv") {
            report::write_density_csv(out_, r);
        } else {
            static const std::map<std::string, std::string> model_key = {
                {"A1", "lambda"},      {"R", "p_S"},          {"L", "p_S"},           {"central", "p_central"},
                {"right", "p_right"},  {"left", "p_right"},   {"isolated", "p_isolated"}, {"r_star", "p_r_star"}};
            const auto theory = report::to_json(r.theoretical);
            for (const auto& [k, v] : r.empirical) {
                out_ << k << ' ' << fmt(v);
                if (const auto it = model_key.find(k); it != model_key.end()) {
                    out_ << " model " << fmt(theory.at(it->second).get<double>()) << " deviation "
                         << fmt(r.deviations.at(k));
                }
                out_ << '\n';
            }
        }
    }

    void cramer() {
        allow_formats({"text", "json", "csv", "raw"});
        const std::uint64_t limit = require_limit();
        const auto s = simulate(limit, cfg_.seed, threads());
        if (cfg_.format == "raw") {
            report::write_raw_sample(out_, s);
            return;
        }
        const auto e = census_on_sample(s);
        if (cfg_.format == "json") {
            emit(report::to_json(s, e));
        } else if (cfg_.format == "csv") {
            report::write_estimate_csv(out_, e);
        } else {
            out_ << "sample_size " << s.pseudo_primes.size() << '\n';
            out_ << "intervals " << e.trials << '\n';
            out_ << "p_hat_A1 " << fmt(e.p_hat_A1) << '\n';
            for (unsigned h = 2; h <= 3; ++h) {
                const auto g = check_geometric_law(e, h);
                out_ << "p_hat_A" << h << ' ' << fmt(g.p_ah) << " p_hat_A1^" << h << ' ' << fmt(g.p_a1_pow_h)
                     << " z " << fmt(g.z) << '\n';
            }
        }
    }

    RunConfig cfg_;
    std::ostream& out_;
    BuildOptions build_;
};

struct Spec {
    const char* name;
    const char* help;
    std::vector<const char*> options;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Prime gap interval toolkit: special prime families, interval census, random-model checks", "gapprob"};
    app.require_subcommand(1, 1);

    const std::vector<Spec> commands = {
        {"primes", "List primes up to --limit (or the first --count).\nCSV columns: index,prime",
         {"limit", "count"}},
        {"ramanujan", "Ramanujan primes R_n^(m). CSV columns: index,term; bfile: n a(n)", {"limit", "count", "m"}},
        {"labos", "Labos primes L_n^(m). CSV columns: index,term; bfile: n a(n)", {"limit", "count", "m"}},
        {"classify", "Class of --prime, or of every prime under --limit.\nCSV columns: prime,interval_k,class",
         {"limit", "m", "prime"}},
        {"census", "Histogram of intervals (m p_k, m p_{k+1}) by prime count.\nCSV columns: i,h_i", {"limit", "m"}},
        {"pseudo", "R-primes that are not Ramanujan (--side r) or L-primes that are not Labos (--side l).\n"
                   "CSV columns: index,prime",
         {"limit", "m", "side"}},
        {"rstar", "Primes p_k whose interval holds an R-prime. CSV columns: index,prime", {"limit", "m"}},
        {"interleave", "Check R_1 <= L_1 <= R_2 <= ... (exit 3 on violation)", {"limit", "m"}},
        {"bertrand", "Chain from --start of length --len, or the first --count sieve seeds",
         {"limit", "count", "m", "start", "len"}},
        {"verify-thm1", "Compare sieve seeds with 2 followed by the R-primes (exit 3 on mismatch)", {"limit", "count"}},
        {"lambda", "Root of (1-l)ln(1-l) + l^2/m = 0", {"m", "tol"}},
        {"probs", "Model probabilities for multiplier m", {"m", "tol"}},
        {"densities", "Empirical class shares next to the model values.\nCSV columns: section,key,value",
         {"limit", "m", "tol"}},
        {"cramer", "Random-model sample and interval census (format raw dumps the sample).\n"
                   "CSV columns: h,exact,at_least,p_exact,p_at_least,se_exact,se_at_least",
         {"limit", "seed"}},
    };

    for (const auto& spec : commands) {
        auto* sub = app.add_subcommand(spec.name, spec.help);
        sub->callback([&cfg, name = std::string(spec.name)] { cfg.command = name; });
        for (const std::string opt : spec.options) {
            if (opt == "limit") sub->add_option("--limit", cfg.limit, "Largest integer examined");
            if (opt == "count") sub->add_option("--count", cfg.count, "Number of terms");
            if (opt == "m") sub->add_option("--m", cfg.m_text, "Multiplier NUM/DEN or integer, > 1")->capture_default_str();
            if (opt == "seed") sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
            if (opt == "tol") sub->add_option("--tol", cfg.tol, "Solver tolerance")->capture_default_str();
            if (opt == "prime") sub->add_option("--prime", cfg.prime, "Prime to classify");
            if (opt == "side") sub->add_option("--side", cfg.side, "r or l")->capture_default_str();
            if (opt == "start") sub->add_option("--start", cfg.start, "Chain seed (a prime)");
            if (opt == "len") sub->add_option("--len", cfg.len, "Chain length (default 10)");
        }
        sub->add_option("--format", cfg.format, "text, json, csv, bfile or raw where supported")->capture_default_str();
        sub->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores (env GAPPROB_THREADS)");
        sub->add_option("--memory-cap", cfg.memory_cap, "Refuse tables above this size, e.g. 4G (env GAPPROB_MEMORY_CAP)");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        // a subcommand's own --help
        if (e.get_exit_code() == 0) {
            for (const auto* sub : app.get_subcommands()) out << sub->help();
            return 0;
        }
        err << "ERROR 1: " << e.what() << '\n';
        return 1;
    }

    try {
        Runner(cfg, out).execute();
        out.flush();
        return 0;
    } catch (const Error& e) {
        out.flush();
        err << "ERROR " << e.exit_code() << ": " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::bad_alloc&) {
        err << "ERROR 2: out of memory\n";
        return 2;
    }
}

}  // namespace gapprob::cli
