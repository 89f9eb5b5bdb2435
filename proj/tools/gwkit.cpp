#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "gwkit/gw_cli.hpp"

namespace {

std::size_t threads_from_env() {
    if (const char* env = std::getenv("GWKIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return 1;
}

void add_common(CLI::App* sub, gwkit::RunConfig& cfg) {
    sub->add_option("--data", cfg.data_path, "input file")->required();
    sub->add_option("--format", cfg.format, "csv|geojson")
        ->check(CLI::IsMember({"csv", "geojson"}));
    sub->add_option("--x-col", cfg.x_col, "x coordinate column (CSV)");
    sub->add_option("--y-col", cfg.y_col, "y coordinate column (CSV)");
    sub->add_option("--kernel", cfg.kernel, "kernel shape")
        ->check(CLI::IsMember({"gaussian", "exponential", "bisquare", "tricube", "boxcar"}));
    sub->add_flag("--adaptive", cfg.adaptive, "adaptive (nearest-neighbor) bandwidth");
    sub->add_flag("--fixed", cfg.fixed, "fixed (distance) bandwidth");
    sub->add_option("--threads", cfg.threads, "worker thread cap");
    sub->add_option("--out", cfg.out_path, "output file");
    sub->set_config("--config", "", "key=value config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gwkit - geographically weighted analysis toolkit"};
    app.require_subcommand(1);

    gwkit::RunConfig cfg;
    cfg.threads = threads_from_env();

    auto* bw = app.add_subcommand("bw", "search for a bandwidth");
    add_common(bw, cfg);
    bw->add_option("--formula", cfg.formula, "response ~ predictor + ...")->required();
    bw->add_option("--search", cfg.search, "linear|golden")
        ->check(CLI::IsMember({"linear", "golden"}))->required();
    bw->add_option("--range", cfg.range, "lo:hi candidate range")->required();
    bw->add_option("--criterion", cfg.criterion, "aic|cv")
        ->check(CLI::IsMember({"aic", "cv"}));
    bw->add_option("--tol", cfg.golden_tol, "golden-search interval tolerance");

    auto* gwr = app.add_subcommand("gwr", "fit a GWR coefficient surface");
    add_common(gwr, cfg);
    gwr->add_option("--formula", cfg.formula, "response ~ predictor + ...")->required();
    auto* bw_opt = gwr->add_option("--bw", cfg.bw, "bandwidth (distance or k)");
    gwr->add_option("--search", cfg.search, "linear|golden")
        ->check(CLI::IsMember({"linear", "golden"}));
    gwr->add_option("--range", cfg.range, "lo:hi candidate range");
    gwr->add_option("--criterion", cfg.criterion, "aic|cv")
        ->check(CLI::IsMember({"aic", "cv"}));
    gwr->add_option("--tol", cfg.golden_tol, "golden-search interval tolerance");

    auto* gwss = app.add_subcommand("gwss", "geographically weighted summary statistics");
    add_common(gwss, cfg);
    gwss->add_option("--variable", cfg.variable, "attribute to summarize")->required();
    auto* bw_opt2 = gwss->add_option("--bw", cfg.bw, "bandwidth (distance or k)");
    gwss->add_option("--stats", cfg.stats, "comma list of mean,std,skew,median");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.has_bw = (bw_opt->count() > 0) || (bw_opt2->count() > 0);

    try {
        return gwkit::run(cfg);
    } catch (const gwkit::gw_error& e) {
        std::cerr << "gwkit: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gwkit: error: " << e.what() << "\n";
        return 1;
    }
}
