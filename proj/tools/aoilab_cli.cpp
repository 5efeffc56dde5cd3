/*
   Copyright 2026 the aoilab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// aoilab command line. Talks to the library exclusively through the C API in
// aoilab.h. Exit codes: 0 success, 2 stability/domain error, 64 usage error,
// 1 failed verification checks.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoilab.h"

namespace {

struct CommonArgs {
    double lambda = 1, mu = 2, gamma = 2, theta = 1, alpha = 0;
    std::vector<double> rates;
    std::string out_path;
    std::string format = "pretty";
    std::uint64_t seed = 0;
    bool seed_given = false;
};

std::uint64_t resolve_seed(const CommonArgs& args) {
    if (args.seed_given) return args.seed;
    if (const char* env = std::getenv("AOI_LAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        std::fprintf(stderr, "warning: ignoring malformed AOI_LAB_SEED='%s'\n",
                     env);
    }
    return aoi_default_seed();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                std::fprintf(stderr, "error: cannot open output file '%s'\n",
                             path.c_str());
                std::exit(AOI_ERR_USAGE);
            }
        }
    }
    template <typename... Args>
    void printf(const char* fmt, Args... args) {
        if constexpr (sizeof...(Args) == 0) {
            write(fmt);
        } else {
            char buf[1024];
            std::snprintf(buf, sizeof(buf), fmt, args...);
            write(buf);
        }
    }

    void write(const char* text) {
        if (file_.is_open())
            file_ << text;
        else
            std::fputs(text, stdout);
    }

private:
    std::ofstream file_;
};

int fail_with(aoi_status status) {
    std::fprintf(stderr, "error: %s\n", aoi_last_error());
    return static_cast<int>(status);
}

aoi_params make_params(const CommonArgs& args) {
    aoi_params p{};
    p.lambda = args.lambda;
    p.mu = args.mu;
    p.gamma = args.gamma;
    p.theta = args.theta;
    p.alpha = args.alpha;
    p.rates = args.rates.empty() ? nullptr : args.rates.data();
    p.n_rates = args.rates.size();
    return p;
}

std::string params_echo(const CommonArgs& args) {
    std::ostringstream os;
    os << "lambda=" << args.lambda << " mu=" << args.mu
       << " gamma=" << args.gamma << " theta=" << args.theta
       << " alpha=" << args.alpha;
    if (!args.rates.empty()) {
        os << " rates=";
        for (std::size_t i = 0; i < args.rates.size(); ++i)
            os << (i ? "," : "") << args.rates[i];
    }
    return os.str();
}

int cmd_analytic(const std::string& model, const CommonArgs& args) {
    aoi_report report{};
    const aoi_params p = make_params(args);
    if (const aoi_status rc = aoi_analytic(model.c_str(), &p, &report))
        return fail_with(rc);
    Output out(args.out_path);
    if (args.format == "csv") {
        out.printf("# aoilab %s cmd=analytic model=%s %s seed=%llu\n",
                   aoi_version(), model.c_str(), params_echo(args).c_str(),
                   static_cast<unsigned long long>(resolve_seed(args)));
        out.printf("delta0,correction,delta_total,bound_lower,bound_upper,"
                   "bound_lower_clamped");
        for (std::size_t i = 0; i < report.n_extras; ++i)
            out.printf(",%s", report.extra_names[i]);
        out.printf("\n%.12g,%.12g,%.12g,%.12g,%.12g,%.12g", report.delta0,
                   report.correction, report.delta_total, report.bound_lower,
                   report.bound_upper, report.bound_lower_clamped);
        for (std::size_t i = 0; i < report.n_extras; ++i)
            out.printf(",%.12g", report.extra_values[i]);
        out.printf("\n");
    } else {
        out.printf("model        %s\n", model.c_str());
        out.printf("delta0       %.6g\n", report.delta0);
        out.printf("correction   %.6g\n", report.correction);
        out.printf("delta_total  %.6g\n", report.delta_total);
        if (report.has_bounds)
            out.printf("bounds       [%.6g, %.6g] (clamped lower %.6g)\n",
                       report.bound_lower, report.bound_upper,
                       report.bound_lower_clamped);
        for (std::size_t i = 0; i < report.n_extras; ++i)
            out.printf("%-12s %.6g\n", report.extra_names[i],
                       report.extra_values[i]);
    }
    return 0;
}

int cmd_simulate(const std::string& system, const CommonArgs& args,
                 const std::string& age_feed, std::uint32_t reps,
                 std::uint64_t departures, std::uint64_t warmup,
                 bool warmup_given, unsigned threads,
                 const std::string& config_path, bool dump_config,
                 const std::string& packet_log) {
    aoi_scenario* scenario = nullptr;
    const std::uint64_t seed = resolve_seed(args);
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot read config '%s'\n",
                         config_path.c_str());
            return AOI_ERR_USAGE;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        if (const aoi_status rc =
                aoi_scenario_parse(buf.str().c_str(), &scenario))
            return fail_with(rc);
    } else {
        const aoi_params p = make_params(args);
        if (const aoi_status rc = aoi_scenario_create(
                system.c_str(), &p, age_feed.empty() ? nullptr : age_feed.c_str(),
                reps, departures, warmup_given ? warmup : UINT64_MAX, seed,
                &scenario))
            return fail_with(rc);
    }
    if (dump_config) {
        char* text = nullptr;
        if (const aoi_status rc = aoi_scenario_serialize(scenario, &text)) {
            aoi_scenario_free(scenario);
            return fail_with(rc);
        }
        Output out(args.out_path);
        out.printf("%s", text);
        aoi_string_free(text);
        aoi_scenario_free(scenario);
        return 0;
    }

    aoi_results* results = nullptr;
    const aoi_status rc =
        aoi_scenario_run(scenario, threads, packet_log.empty() ? 0 : 1,
                         &results);
    if (rc != AOI_OK) {
        aoi_scenario_free(scenario);
        return fail_with(rc);
    }
    if (!packet_log.empty()) {
        if (const aoi_status lrc =
                aoi_results_write_packet_log(results, packet_log.c_str())) {
            aoi_results_free(results);
            aoi_scenario_free(scenario);
            return fail_with(lrc);
        }
    }

    Output out(args.out_path);
    const std::size_t n = aoi_results_count(results);
    aoi_run_stats agg{};
    aoi_results_aggregate(results, &agg);
    if (args.format == "csv") {
        if (config_path.empty()) {
            out.printf("# aoilab %s cmd=simulate system=%s %s reps=%u "
                       "departures=%llu warmup=%s seed=%llu\n",
                       aoi_version(), system.c_str(),
                       params_echo(args).c_str(), static_cast<unsigned>(n),
                       static_cast<unsigned long long>(departures),
                       warmup_given ? std::to_string(warmup).c_str() : "auto",
                       static_cast<unsigned long long>(seed));
        } else {
            // parameters and seed live in the config file
            out.printf("# aoilab %s cmd=simulate config=%s reps=%u\n",
                       aoi_version(), config_path.c_str(),
                       static_cast<unsigned>(n));
        }
        out.printf(
            "rep,aaoi,eff_rate,cross_moment,corr,cv_y,mean_A,sd_A,far_rate,"
            "se_aaoi\n");
        for (std::size_t i = 0; i < n; ++i) {
            aoi_run_stats row{};
            aoi_results_row(results, i, &row);
            out.printf("%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,"
                       "%.12g\n",
                       i, row.aaoi, row.eff_rate, row.cross_moment,
                       row.correlation, row.cv_y, row.mean_age, row.sd_age,
                       row.far_rate, row.se_aaoi);
        }
        out.printf("aggregate,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,"
                   "%.12g\n",
                   agg.aaoi, agg.eff_rate, agg.cross_moment, agg.correlation,
                   agg.cv_y, agg.mean_age, agg.sd_age, agg.far_rate,
                   agg.se_aaoi);
    } else {
        aoi_report ref{};
        aoi_results_reference(results, &ref);
        out.printf("system            %s\n", system.c_str());
        out.printf("replications      %zu\n", n);
        out.printf("mean average age  %.6g (se %.6g)\n", agg.aaoi,
                   agg.se_aaoi);
        out.printf("effective rate    %.6g\n", agg.eff_rate);
        out.printf("cross moment      %.6g\n", agg.cross_moment);
        out.printf("correlation       %.6g\n", agg.correlation);
        out.printf("mean initial age  %.6g\n", agg.mean_age);
        out.printf("far-update rate   %.6g\n", agg.far_rate);
        out.printf("analytic delta0   %.6g\n", ref.delta0);
        out.printf("analytic total    %.6g\n", ref.delta_total);
        if (ref.has_bounds)
            out.printf("analytic bounds   [%.6g, %.6g]\n", ref.bound_lower,
                       ref.bound_upper);
    }
    aoi_results_free(results);
    aoi_scenario_free(scenario);
    return 0;
}

int cmd_table(std::size_t queues, std::vector<double> loads,
              const std::string& orderings, const CommonArgs& args,
              std::uint32_t reps, std::uint64_t departures,
              std::uint64_t warmup, bool warmup_given, unsigned threads) {
    if (loads.empty()) {
        if (queues < 1 || queues > 16) {
            std::fprintf(stderr, "error: --queues must be 1..16\n");
            return AOI_ERR_USAGE;
        }
        loads.resize(queues);
        for (std::size_t i = 0; i < queues; ++i)
            loads[i] = queues == 1
                           ? 0.1
                           : 0.1 + 0.8 * static_cast<double>(i) /
                                       static_cast<double>(queues - 1);
    }
    const std::uint64_t seed = resolve_seed(args);
    std::vector<aoi_table_row> rows(50000);
    std::size_t n_rows = rows.size();
    if (const aoi_status rc = aoi_tandem_table(
            loads.data(), loads.size(), orderings.c_str(), args.lambda, reps,
            departures, warmup_given ? warmup : UINT64_MAX, seed, threads,
            rows.data(), &n_rows))
        return fail_with(rc);
    Output out(args.out_path);
    out.printf("# aoilab %s cmd=table lambda=%g loads=", aoi_version(),
               args.lambda);
    for (std::size_t i = 0; i < loads.size(); ++i)
        out.printf("%s%g", i ? "," : "", loads[i]);
    out.printf(" orderings=%s reps=%u departures=%llu seed=%llu\n",
               orderings.c_str(), reps,
               static_cast<unsigned long long>(departures),
               static_cast<unsigned long long>(seed));
    // The tightest interval over all orderings puts the slowest server
    // last; report it once since per-row bounds can be loose.
    {
        std::vector<double> sorted_loads = loads;
        std::sort(sorted_loads.begin(), sorted_loads.end());
        std::vector<double> rates;
        for (double load : sorted_loads) rates.push_back(args.lambda / load);
        aoi_params p{};
        p.lambda = args.lambda;
        p.rates = rates.data();
        p.n_rates = rates.size();
        aoi_report ref{};
        if (aoi_analytic("tandem-chain", &p, &ref) == AOI_OK)
            out.printf("# slowest-last bounds: lb=%.12g ub=%.12g\n",
                       ref.bound_lower, ref.bound_upper);
    }
    for (std::size_t i = 0; i < loads.size(); ++i)
        out.printf("rho_%zu,", i + 1);
    out.printf("age_av,age_sd,age_lb,age_ub\n");
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t i = 0; i < rows[r].n_loads; ++i)
            out.printf("%.12g,", rows[r].loads[i]);
        out.printf("%.12g,%.12g,%.12g,%.12g\n", rows[r].age_av, rows[r].age_sd,
                   rows[r].age_lb, rows[r].age_ub);
    }
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& grid_spec) {
    std::vector<double> alphas;
    double lo = 0, hi = 0.95, step = 0.05;
    if (!grid_spec.empty()) {
        if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) !=
                3 ||
            step <= 0) {
            std::fprintf(stderr, "error: --alpha-grid expects lo:hi:step\n");
            return AOI_ERR_USAGE;
        }
    }
    for (double a = lo; a <= hi + 1e-12; a += step) alphas.push_back(a);
    std::vector<aoi_zw_row> rows(alphas.size());
    if (const aoi_status rc = aoi_zw_bounds_sweep(args.mu, alphas.data(),
                                                  alphas.size(), rows.data()))
        return fail_with(rc);
    Output out(args.out_path);
    out.printf("# aoilab %s cmd=sweep model=zero-wait mu=%g grid=%g:%g:%g "
               "seed=%llu\n",
               aoi_version(), args.mu, lo, hi, step,
               static_cast<unsigned long long>(resolve_seed(args)));
    out.printf("alpha,correction,lb,ub,clamped_lb\n");
    for (const auto& row : rows)
        out.printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", row.alpha,
                   row.correction, row.lower, row.upper, row.clamped_lower);
    return 0;
}

void verify_print_line(const char* name, int passed, const char* detail,
                       void*) {
    std::printf("[%s] %-40s %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int cmd_verify(const std::string& suite, const CommonArgs& args,
               unsigned threads) {
    int failed = 0;
    if (const aoi_status rc =
            aoi_verify(suite.c_str(), resolve_seed(args), threads,
                       verify_print_line, nullptr, &failed))
        return fail_with(rc);
    std::printf("%s: %s (%d failed)\n", suite.c_str(),
                failed == 0 ? "all checks passed" : "checks FAILED", failed);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aoilab: average age-of-information formulas and their "
                 "simulation cross-checks"};
    app.set_version_flag("--version", aoi_version());
    app.require_subcommand(1);

    CommonArgs args;
    std::string model, system = "mm1", age_feed, orderings = "as-given";
    std::string config_path, packet_log, suite = "theorem1", grid;
    std::vector<double> table_loads;
    std::uint32_t reps = 1;
    std::uint64_t departures = 100000, warmup = 0;
    unsigned threads = 0;
    std::size_t queues = 0;
    bool dump_config = false;

    auto add_common = [&](CLI::App* cmd, bool with_rates = true) {
        cmd->add_option("--lambda", args.lambda, "arrival rate");
        cmd->add_option("--mu", args.mu, "service rate of the final queue");
        cmd->add_option("--gamma", args.gamma, "service rate of the prior queue");
        cmd->add_option("--theta", args.theta, "retrial rate");
        cmd->add_option("--alpha", args.alpha, "erasure probability");
        if (with_rates)
            cmd->add_option("--rates", args.rates,
                            "comma-separated service rates (tandem chain)")
                ->delimiter(',');
        cmd->add_option("--out", args.out_path, "write output to this file");
        cmd->add_option("--format", args.format, "csv or pretty")
            ->check(CLI::IsMember({"csv", "pretty"}));
        cmd->add_option("--seed", args.seed,
                        "rng seed (default: AOI_LAB_SEED or 20260808)")
            ->trigger_on_parse()
            ->each([&](const std::string&) { args.seed_given = true; });
    };

    CLI::App* analytic = app.add_subcommand(
        "analytic", "evaluate closed-form average-age results");
    analytic->add_option("--model", model, "mm1|zero-wait|tandem-two|"
                         "tandem-chain|hetero-tandem|retrial|mm11|hem1")
        ->required();
    add_common(analytic);

    CLI::App* simulate =
        app.add_subcommand("simulate", "run replicated simulations");
    simulate->add_option("--model", system,
                         "mm1|zero-wait|tandem-two|tandem-chain|hetero-tandem|"
                         "retrial|independent-feed");
    simulate->add_option("--age-feed", age_feed,
                         "initial-age distribution, e.g. pointmass(2)");
    simulate->add_option("--reps", reps, "replications");
    simulate->add_option("--departures", departures, "deliveries per replication");
    CLI::Option* warm_opt =
        simulate->add_option("--warmup", warmup, "deliveries discarded");
    simulate->add_option("--threads", threads, "worker threads (0 = auto)");
    simulate->add_option("--config", config_path, "scenario config file");
    simulate->add_flag("--dump-config", dump_config,
                       "print the scenario config instead of running");
    simulate->add_option("--packet-log", packet_log,
                         "write per-packet CSV log of the first replication");
    add_common(simulate);

    CLI::App* table = app.add_subcommand(
        "table", "reproduce tandem-chain age tables with bounds");
    table->add_option("--queues", queues, "number of queues (equispaced loads)");
    table->add_option("--loads", table_loads,
                      "comma-separated per-queue loads in (0,1)")
        ->delimiter(',');
    add_common(table);
    table->add_option("--orderings", orderings, "all|as-given|slowest-last")
        ->check(CLI::IsMember({"all", "as-given", "slowest-last"}));
    table->add_option("--reps", reps, "replications per ordering");
    table->add_option("--departures", departures, "deliveries per replication");
    CLI::Option* table_warm =
        table->add_option("--warmup", warmup, "deliveries discarded");
    table->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "zero-wait correction bounds over an alpha grid");
    sweep->add_option("--alpha-grid", grid, "lo:hi:step (default 0:0.95:0.05)");
    add_common(sweep);

    CLI::App* verify = app.add_subcommand(
        "verify", "run a named verification suite");
    verify->add_option("--suite", suite, "theorem1|appendix-lemmas|bounds");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : AOI_ERR_USAGE;
    }

    if (analytic->parsed()) return cmd_analytic(model, args);
    if (simulate->parsed())
        return cmd_simulate(system, args, age_feed, reps, departures, warmup,
                            warm_opt->count() > 0, threads, config_path,
                            dump_config, packet_log);
    if (table->parsed())
        return cmd_table(queues, table_loads, orderings, args, reps,
                         departures, warmup, table_warm->count() > 0, threads);
    if (sweep->parsed()) return cmd_sweep(args, grid);
    if (verify->parsed()) return cmd_verify(suite, args, threads);
    return AOI_ERR_USAGE;
}
