// tickmoments command-line pipeline: run | synth | selftest.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tickmoments/csv_io.hpp"
#include "tickmoments/pipeline.hpp"
#include "tickmoments/report_io.hpp"
#include "tickmoments/selftest.hpp"
#include "tickmoments/synthgen.hpp"

namespace tkm = tickmoments;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct RunArgs {
    std::string input;
    std::string delta;
    std::string tau;
    std::optional<std::int64_t> origin;
    std::vector<int> levels;
    int n_max = tkm::kDefaultMaxPower;
    std::vector<double> alphas;
    std::string format = "json";
    std::string out = ".";
    std::string partial = "drop";
};

struct SynthArgs {
    tkm::GenConfig cfg;
    std::string spacing = "1ms";
    std::string model = "walk";
    std::string out;
};

int do_run(const RunArgs& a) {
    tkm::RunConfig cfg;
    try {
        cfg.delta = tkm::parse_duration(a.delta);
        if (!a.tau.empty()) cfg.tau = tkm::parse_duration(a.tau);
        cfg.origin = a.origin;
        cfg.levels = a.levels;
        cfg.n_max = a.n_max;
        cfg.alphas = a.alphas;
        cfg.partial = a.partial == "flag" ? tkm::PartialWindowPolicy::emit_flagged : tkm::PartialWindowPolicy::drop;
        tkm::validate(cfg);
    } catch (const tkm::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        const tkm::IngestResult in = tkm::ingest(a.input);
        for (const auto& w : in.warnings) std::cerr << "warning: " << w << '\n';
        const tkm::RunReport rep = tkm::run(in.trades, cfg);
        const auto format = a.format == "csv" ? tkm::OutputFormat::csv : tkm::OutputFormat::json;
        for (const auto& p : tkm::write_report(rep, a.out, format)) std::cout << p.string() << '\n';
        std::cerr << rep.diagnostics.intervals << " interval(s), " << rep.diagnostics.empty_intervals
                  << " empty, " << rep.diagnostics.dropped_returns << " dropped return observation(s), "
                  << in.rejected_rows << " rejected row(s)\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
    return 0;
}

int do_synth(SynthArgs a) {
    try {
        a.cfg.tick_spacing = tkm::parse_duration(a.spacing);
        a.cfg.price_model = a.model == "constant" ? tkm::PriceModel::constant : tkm::PriceModel::random_walk;
        const auto trades = tkm::generate(a.cfg);
        if (a.out.empty() || a.out == "-") {
            tkm::write_trades_csv(std::cout, trades);
        } else {
            std::ofstream f(a.out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write '" << a.out << "'\n";
                return kDataError;
            }
            tkm::write_trades_csv(f, trades);
        }
    } catch (const tkm::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return 0;
}

int do_selftest(std::uint64_t seed, std::size_t sets) {
    bool ok = true;
    for (const auto& c : tkm::run_selftest(seed, sets)) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (worst " << tkm::format_double(c.worst) << ")\n";
        ok = ok && c.passed;
    }
    return ok ? 0 : kDataError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Market-based statistical moments of price and return from trade ticks"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Aggregate a trade CSV and write interval, level and VaR reports");
    run->add_option("--input", run_args.input, "Trade CSV (time,price,volume)")->required()->check(CLI::ExistingFile);
    run->add_option("--delta", run_args.delta, "Averaging interval, e.g. 1s, 500ms")->required();
    run->add_option("--tau", run_args.tau, "Return lag, e.g. 1m");
    run->add_option("--origin", run_args.origin, "Grid origin t0 in ns (default: first trade time)");
    run->add_option("--levels", run_args.levels, "Secondary averaging factors, e.g. 2,5")->delimiter(',');
    run->add_option("--nmax", run_args.n_max, "Highest power sum kept per interval")->check(CLI::Range(2, tkm::kMaxPowerLimit));
    run->add_option("--alpha", run_args.alphas, "VaR confidence levels, e.g. 0.01,0.05")->delimiter(',');
    run->add_option("--format", run_args.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", run_args.out, "Output directory");
    run->add_option("--partial", run_args.partial, "Partial secondary windows: drop or flag")
        ->check(CLI::IsMember({"drop", "flag"}));

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic trade CSV");
    synth->add_option("--seed", synth_args.cfg.seed);
    synth->add_option("--count", synth_args.cfg.count);
    synth->add_option("--start", synth_args.cfg.start, "First tick time in ns");
    synth->add_option("--spacing", synth_args.spacing, "Tick spacing, e.g. 1ms");
    synth->add_option("--model", synth_args.model)->check(CLI::IsMember({"constant", "walk"}));
    synth->add_option("--p0", synth_args.cfg.p0);
    synth->add_option("--price-step", synth_args.cfg.price_log_step, "Per-tick log price step std");
    synth->add_option("--u0", synth_args.cfg.u0, "Median volume");
    synth->add_option("--volume-std", synth_args.cfg.volume_log_std, "Log volume std");
    synth->add_option("--rho", synth_args.cfg.rho, "Volume/price shock coupling in [-1, 1]");
    synth->add_option("--out", synth_args.out, "Output file (default: stdout)");

    std::uint64_t selftest_seed = 7;
    std::size_t selftest_sets = 200;
    auto* selftest = app.add_subcommand("selftest", "Check closed forms against direct weighted sums");
    selftest->add_option("--seed", selftest_seed);
    selftest->add_option("--sets", selftest_sets);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (*run) return do_run(run_args);
    if (*synth) return do_synth(synth_args);
    return do_selftest(selftest_seed, selftest_sets);
}
