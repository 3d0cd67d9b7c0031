// Command-line surface for the library. Every numeric quantity in the
// project is reachable from here: exact moments (arbitrary precision),
// limit-law moments, meander tallies, Harer-Zagier numbers, the Monte Carlo
// experiments, and the property suite.
//
// Output is JSON on stdout by default, CSV with --format csv. Exact values
// are serialized as decimal strings {"num": ..., "den": ...} so nothing is
// lost to floating point. Exit codes: 0 success, 1 refused precondition or
// ceiling, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptmoments/exactmoments.hpp"
#include "ptmoments/freeprob.hpp"
#include "ptmoments/harerzagier.hpp"
#include "ptmoments/meanders.hpp"
#include "ptmoments/montecarlo.hpp"
#include "ptmoments/selfcheck.hpp"

using json = nlohmann::json;
using namespace ptmoments;

namespace {

json rational_json(const Rational& q) {
    return json{{"num", numerator_string(q)}, {"den", denominator_string(q)}};
}

json estimate_json(const MCEstimate& e) {
    return json{{"statistic", e.statistic}, {"mean", e.mean},       {"stderr", e.stderr_},
                {"samples", e.samples},     {"seed", e.seed}};
}

void print_csv_kv(const json& value, const std::string& prefix, std::ostream& os) {
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            print_csv_kv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
            print_csv_kv(value[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << "," << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
    }
}

struct Output {
    std::string format = "json";

    void emit(const std::string& command, const json& params, const json& value,
              double elapsed_ms, bool cache_hit) const {
        if (format == "csv") {
            if (value.is_array() && !value.empty() && value[0].is_object() &&
                value[0].contains("mean")) {
                // estimate rows use the documented summary columns
                std::cout << "statistic,n,mean,stderr,samples,seed\n";
                for (const auto& row : value) {
                    std::cout << row.value("statistic", "") << ","
                              << (row.contains("n") ? row["n"].dump() : "") << ","
                              << row["mean"].dump() << "," << row["stderr"].dump() << ","
                              << row["samples"].dump() << "," << row["seed"].dump() << "\n";
                }
            } else {
                std::cout << "key,value\n";
                print_csv_kv(json{{"command", command},
                                  {"params", params},
                                  {"value", value},
                                  {"elapsed_ms", elapsed_ms},
                                  {"cache_hit", cache_hit}},
                             "", std::cout);
            }
        } else {
            json out{{"command", command},
                     {"params", params},
                     {"value", value},
                     {"elapsed_ms", elapsed_ms},
                     {"cache_hit", cache_hit}};
            std::cout << out.dump(2) << "\n";
        }
    }
};

Rational parse_rational(const std::string& s) { return rational_from_string(s); }

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    if (out.empty()) throw std::invalid_argument("expected a comma-separated integer list");
    return out;
}

NoncrossingPartition parse_pairing(const std::string& s) {
    json j = json::parse(s);
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j) blocks.push_back(b.get<std::vector<int>>());
    return NoncrossingPartition(blocks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and Monte Carlo moments of partially transposed random quantum states"};
    app.require_subcommand(1);

    Output output;
    unsigned threads = 0;
    bool no_cache = false;
    app.add_option("--format", output.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_flag("--no-cache", no_cache, "bypass the class-table disk cache");

    // every runner returns the value and fills params; table-backed commands
    // also report whether the last table access was served from cache
    std::string command;
    bool cache_hit = false;
    std::function<json(json&)> runner;

    std::int64_t l = 2, m = 2, n = 2;
    int p = 2, q = 2, g = 0, hz_n = 0, bins = 40;
    std::uint64_t samples = 10000, seed = 0;
    std::string theta_str, regime, a_str = "1", c_str = "1", l0_str = "1", b_str = "1",
                           m0_str = "1", x_str = "1", upper_str, lower_str, n_list_str = "4,8,16";
    double a_double = 1.0;
    bool do_build = false, do_poly = false, do_tally = false;

    auto add_lmn = [&](CLI::App* cmd) {
        cmd->add_option("--l", l, "environment dimension")->required();
        cmd->add_option("--m", m, "first system dimension")->required();
        cmd->add_option("--n", n, "second system dimension (transposed factor)")->required();
    };

    // ---- exact ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("exact", "E Z^(p): exact moment of mn rho^G");
        add_lmn(cmd);
        cmd->add_option("--p", p, "moment order")->required();
        cmd->callback([&] {
            command = "exact";
            runner = [&](json& params) {
                params = {{"l", l}, {"m", m}, {"n", n}, {"p", p}};
                TableStore tables(default_cache_dir(), !no_cache);
                Rational v = expected_moment(l, m, n, p, tables, threads);
                cache_hit = tables.last_was_cache_hit();
                return rational_json(v);
            };
        });
    }

    // ---- mixed ------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("mixed", "E prod_i trace[(mn rho^G)^theta_i]");
        add_lmn(cmd);
        cmd->add_option("--theta", theta_str, "cycle type, e.g. 2,2")->required();
        cmd->callback([&] {
            command = "mixed";
            runner = [&](json& params) {
                MixedMomentSpec spec{parse_int_list(theta_str)};
                params = {{"l", l}, {"m", m}, {"n", n}, {"theta", spec.cycle_type}};
                return rational_json(expected_mixed_moment(l, m, n, spec, threads));
            };
        });
    }

    // ---- variance ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("variance", "Var Z^(p), exact");
        add_lmn(cmd);
        cmd->add_option("--p", p, "moment order")->required();
        cmd->callback([&] {
            command = "variance";
            runner = [&](json& params) {
                params = {{"l", l}, {"m", m}, {"n", n}, {"p", p}};
                TableStore tables(default_cache_dir(), !no_cache);
                Rational v = variance(l, m, n, p, tables, threads);
                cache_hit = tables.last_was_cache_hit();
                return rational_json(v);
            };
        });
    }

    // ---- centered ----------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("centered", "(1/mn) E trace[(mn rho^G - I)^p], exact");
        add_lmn(cmd);
        cmd->add_option("--p", p, "moment order")->required();
        cmd->callback([&] {
            command = "centered";
            runner = [&](json& params) {
                params = {{"l", l}, {"m", m}, {"n", n}, {"p", p}};
                TableStore tables(default_cache_dir(), !no_cache);
                Rational v = centered_moment(l, m, n, p, tables, threads);
                cache_hit = tables.last_was_cache_hit();
                return rational_json(v);
            };
        });
    }

    // ---- table --------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("table", "build or inspect a class-count table");
        cmd->add_option("--p", p, "degree")->required();
        cmd->add_flag("--build", do_build, "force a build even if cached");
        cmd->callback([&] {
            command = "table";
            runner = [&](json& params) {
                params = {{"p", p}, {"build", do_build}};
                TableStore tables(default_cache_dir(), !no_cache && !do_build);
                const ClassCountTable& t = tables.get(p, threads);
                cache_hit = tables.last_was_cache_hit();
                json entries = json::array();
                for (const auto& [key, count] : t.entries)
                    entries.push_back(json{{"a", std::get<0>(key)},
                                           {"b", std::get<1>(key)},
                                           {"c", std::get<2>(key)},
                                           {"count", count}});
                return json{{"p", t.p}, {"total", t.total()}, {"entries", entries}};
            };
        });
    }

    // ---- limit --------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("limit", "moment of a limiting law");
        cmd->add_option("--regime", regime, "regime1 | l_fixed | pure_state | m_fixed")
            ->required()
            ->check(CLI::IsMember({"regime1", "l_fixed", "pure_state", "m_fixed"}));
        cmd->add_option("--p", p, "moment order")->required();
        cmd->add_option("--a", a_str, "regime1: a = lim mn/l (rational)");
        cmd->add_option("--l0", l0_str, "l_fixed: fixed environment dimension");
        cmd->add_option("--c", c_str, "l_fixed / pure_state: c = lim m/n (rational)");
        cmd->add_option("--b", b_str, "m_fixed: b = lim l/n (rational)");
        cmd->add_option("--m0", m0_str, "m_fixed: fixed system dimension");
        cmd->callback([&] {
            command = "limit";
            runner = [&](json& params) {
                DistributionSpec spec = Regime1{parse_rational(a_str)};
                if (regime == "l_fixed")
                    spec = LFixed{parse_rational(l0_str), parse_rational(c_str)};
                else if (regime == "pure_state")
                    spec = PureStateLimit{parse_rational(c_str)};
                else if (regime == "m_fixed")
                    spec = MFixed{parse_rational(b_str), parse_rational(m0_str)};
                params = {{"regime", regime}, {"p", p}};
                TableStore tables(default_cache_dir(), !no_cache);
                Rational v = limit_moment(spec, p, tables, threads);
                cache_hit = tables.last_was_cache_hit();
                return rational_json(v);
            };
        });
    }

    // ---- meander --------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("meander", "meander tallies, polynomials, components");
        cmd->add_option("--q", q, "order (2q bridge points)");
        cmd->add_flag("--poly", do_poly, "evaluate the meander polynomial at --x");
        cmd->add_flag("--tally", do_tally, "tally M_q^{(k)} by component count");
        cmd->add_option("--x", x_str, "evaluation point for --poly (rational)");
        cmd->add_option("--upper", upper_str, "upper pairing as JSON, e.g. [[1,2],[3,4]]");
        cmd->add_option("--lower", lower_str, "lower pairing as JSON");
        cmd->callback([&] {
            command = "meander";
            runner = [&](json& params) {
                if (!upper_str.empty() || !lower_str.empty()) {
                    params = {{"q", q}, {"upper", upper_str}, {"lower", lower_str}};
                    MeanderConfig cfg(q, parse_pairing(upper_str), parse_pairing(lower_str));
                    return json{{"components", components(cfg)}};
                }
                MeanderTally tally = meander_tally(q);
                params = {{"q", q}};
                json counts = json::object();
                for (const auto& [k, v] : tally.counts) counts[std::to_string(k)] = v;
                if (do_poly) {
                    params["x"] = x_str;
                    return json{{"polynomial", rational_json(
                                                   meander_polynomial(tally, parse_rational(x_str)))},
                                {"coefficients", counts}};
                }
                return json{{"tally", counts}, {"total", tally.total()}};
            };
        });
    }

    // ---- hz --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("hz", "Harer-Zagier numbers and the appendix checks");
        cmd->add_option("--g", g, "genus")->required();
        cmd->add_option("--n", hz_n, "half the number of points")->required();
        cmd->callback([&] {
            command = "hz";
            runner = [&](json& params) {
                params = {{"g", g}, {"n", hz_n}};
                HZTable table;
                return json{{"epsilon", table.epsilon(g, hz_n).str()},
                            {"hzcor_bound_holds", hzcor_check(g, hz_n, table)}};
            };
        });
    }

    // ---- mc --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("mc", "Monte Carlo experiments (seed required)");
        cmd->require_subcommand(1);

        auto* moment = cmd->add_subcommand("moment", "estimate E Z^(p) and Var Z^(p)");
        add_lmn(moment);
        moment->add_option("--p", p, "largest moment order")->required();
        moment->add_option("--samples", samples, "sample count")->required();
        moment->add_option("--seed", seed, "RNG seed")->required();
        moment->callback([&] {
            command = "mc moment";
            runner = [&](json& params) {
                params = {{"l", l}, {"m", m},
                          {"n", n}, {"p", p},
                          {"samples", samples}, {"seed", seed}};
                auto est = mc_moment_estimates(l, m, n, p, samples, seed, threads);
                json rows = json::array();
                for (const auto& e : est.moments) rows.push_back(estimate_json(e));
                for (const auto& e : est.variances) rows.push_back(estimate_json(e));
                return rows;
            };
        });

        auto* extreme = cmd->add_subcommand("extreme", "extreme eigenvalues of mn rho^G");
        extreme->add_option("--a", a_double, "target ratio mn/l")->required();
        extreme->add_option("--n-list", n_list_str, "comma-separated n grid");
        extreme->add_option("--samples", samples, "samples per grid point")->required();
        extreme->add_option("--seed", seed, "RNG seed")->required();
        extreme->callback([&] {
            command = "mc extreme";
            runner = [&](json& params) {
                auto n_list = parse_int_list(n_list_str);
                params = {{"a", a_double}, {"n_list", n_list}, {"samples", samples}, {"seed", seed}};
                json rows = json::array();
                for (const auto& row : extreme_eigenvalue_experiment(a_double, n_list, samples,
                                                                     seed, threads)) {
                    json jmin = estimate_json(row.lambda_min);
                    jmin["n"] = row.n;
                    jmin["l"] = row.l;
                    json jmax = estimate_json(row.lambda_max);
                    jmax["n"] = row.n;
                    jmax["l"] = row.l;
                    rows.push_back(jmin);
                    rows.push_back(jmax);
                }
                return rows;
            };
        });

        auto* meander_mc = cmd->add_subcommand("meander", "matrix model for M_q(l)");
        meander_mc->add_option("--l", l, "number of matrices")->required();
        meander_mc->add_option("--n", n, "matrix side is n^2")->required();
        meander_mc->add_option("--q", q, "half moment order")->required();
        meander_mc->add_option("--samples", samples, "sample count")->required();
        meander_mc->add_option("--seed", seed, "RNG seed")->required();
        meander_mc->callback([&] {
            command = "mc meander";
            runner = [&](json& params) {
                params = {{"l", l}, {"n", n}, {"q", q}, {"samples", samples}, {"seed", seed}};
                auto est = meander_mc_estimate(static_cast<int>(l), static_cast<int>(n), q, samples,
                                               seed, threads);
                return json::array({estimate_json(est)});
            };
        });
    }

    // ---- spectrum -----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("spectrum", "eigenvalue histogram of mn rho^G");
        add_lmn(cmd);
        cmd->add_option("--samples", samples, "number of sampled states")->required();
        cmd->add_option("--seed", seed, "RNG seed")->required();
        cmd->add_option("--bins", bins, "histogram bins");
        cmd->callback([&] {
            command = "spectrum";
            runner = [&](json& params) {
                params = {{"l", l}, {"m", m}, {"n", n}, {"samples", samples},
                          {"seed", seed}, {"bins", bins}};
                std::vector<double> all;
                for (std::uint64_t s = 0; s < samples; ++s) {
                    RNGStream rng(seed, s);
                    ComplexMatrix rho = random_state(static_cast<int>(l), static_cast<int>(m),
                                                     static_cast<int>(n), rng);
                    ComplexMatrix X =
                        scale(partial_transpose(rho, static_cast<int>(m), static_cast<int>(n)),
                              static_cast<double>(m) * static_cast<double>(n));
                    auto eig = empirical_spectrum(X);
                    all.insert(all.end(), eig.begin(), eig.end());
                }
                double lo = *std::min_element(all.begin(), all.end());
                double hi = *std::max_element(all.begin(), all.end());
                if (hi <= lo) hi = lo + 1;
                std::vector<std::uint64_t> hist(static_cast<std::size_t>(bins), 0);
                for (double x : all) {
                    auto idx = static_cast<std::size_t>((x - lo) / (hi - lo) * bins);
                    if (idx >= hist.size()) idx = hist.size() - 1;
                    ++hist[idx];
                }
                json rows = json::array();
                for (int i = 0; i < bins; ++i)
                    rows.push_back(json{{"bin_lo", lo + (hi - lo) * i / bins},
                                        {"bin_hi", lo + (hi - lo) * (i + 1) / bins},
                                        {"count", hist[static_cast<std::size_t>(i)]}});
                return rows;
            };
        });
    }

    // ---- check -----------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("check", "run the property suite");
        cmd->callback([&] {
            command = "check";
            runner = [&](json& params) {
                params = json::object();
                TableStore tables(default_cache_dir(), !no_cache);
                json rows = json::array();
                bool all = true;
                for (const auto& r : run_selfchecks(tables, threads)) {
                    rows.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                    all = all && r.pass;
                    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "\n";
                }
                if (!all) throw std::runtime_error("property suite failed");
                return rows;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        json params;
        auto t0 = std::chrono::steady_clock::now();
        json value = runner(params);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        output.emit(command, params, value, ms, cache_hit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
