#include "gwkit/gw_cli.hpp"

#include <cmath>
#include <sstream>

#include "gwkit/gw_descriptive.hpp"
#include "gwkit/gw_regression.hpp"

namespace gwkit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw config_error("--range must look like lo:hi");
    try {
        const double lo = std::stod(parts[0]);
        const double hi = std::stod(parts[1]);
        return {lo, hi};
    } catch (const std::exception&) {
        throw config_error("--range must look like lo:hi with numeric bounds");
    }
}

KernelSpec kernel_spec_from(const RunConfig& cfg) {
    if (cfg.adaptive == cfg.fixed)
        throw config_error("exactly one of --adaptive / --fixed is required");
    KernelSpec spec;
    spec.shape = kernel_shape_from_string(cfg.kernel);
    spec.adaptive = cfg.adaptive;
    return spec;
}

std::string label_of(const ObservationTable& t, std::size_t row) {
    if (!t.label_values.empty()) return t.label_values.front()[row];
    return std::to_string(row + 1);
}

void check_bw_xor_search(const RunConfig& cfg, bool allow_bw, bool allow_search) {
    const bool has_search = !cfg.search.empty();
    if (cfg.has_bw && has_search)
        throw config_error("give either --bw or --search, not both");
    if (!cfg.has_bw && !has_search)
        throw config_error(allow_bw && allow_search ? "need --bw or --search"
                           : allow_bw              ? "need --bw"
                                                   : "need --search");
    if (cfg.has_bw && !allow_bw) throw config_error("this subcommand needs --search");
    if (has_search && !allow_search) throw config_error("this subcommand needs --bw");
}

SearchResult run_search(const RunConfig& cfg, const BandwidthObjective& obj) {
    if (cfg.range.empty()) throw config_error("--search needs --range lo:hi");
    const auto [lo, hi] = parse_range(cfg.range);
    const std::size_t n = obj.size();
    if (obj.kernel().adaptive) {
        if (!(lo >= 1.0) || !(hi <= static_cast<double>(n)) || !(lo < hi))
            throw config_error("adaptive --range must satisfy 1 <= lo < hi <= n");
    } else if (!(lo > 0.0) || !(lo < hi)) {
        throw config_error("fixed --range must satisfy 0 < lo < hi");
    }
    if (cfg.search == "linear") {
        std::vector<Bandwidth> candidates;
        if (obj.kernel().adaptive) {
            for (double k = std::ceil(lo); k <= hi; k += 1.0)
                candidates.push_back(Bandwidth::adaptive_k(k));
        } else {
            // 100 evenly spaced fixed distances across the range
            const int steps = 100;
            for (int s = 0; s <= steps; ++s)
                candidates.push_back(Bandwidth::fixed(lo + (hi - lo) * s / steps));
        }
        return linear_search(obj, candidates);
    }
    if (cfg.search == "golden") {
        // tight enough that the reported integer bandwidth is trustworthy
        const double tol = cfg.golden_tol > 0.0 ? cfg.golden_tol : 1e-4 * (hi - lo);
        return golden_search(obj, lo, hi, tol);
    }
    throw config_error("unknown search mode '" + cfg.search + "'");
}

void write_trace_csv(const SearchResult& res, const std::string& path) {
    std::ostringstream out;
    out << "candidate,score\n";
    for (const auto& [c, s] : res.trace)
        out << format_double(c) << "," << format_double(s) << "\n";
    write_file_atomic(path, out.str());
}

std::string bw_display(const Bandwidth& bw) {
    if (bw.adaptive) return format_double(std::floor(bw.value));
    return format_double(bw.value);
}

int run_bw(const RunConfig& cfg, const IngestData& data, std::ostream& out) {
    check_bw_xor_search(cfg, false, true);
    const FormulaSpec formula = parse_formula(cfg.formula);
    const KernelSpec spec = kernel_spec_from(cfg);
    const Criterion crit = criterion_from_string(cfg.criterion);
    const BandwidthObjective obj(data.table, formula, spec, crit, cfg.threads);
    for (const auto& w : obj.warnings()) out << "warning: " << w << "\n";

    const SearchResult res = run_search(cfg, obj);
    out << "criterion: " << to_string(crit) << "\n";
    out << "search: " << cfg.search << "\n";
    if (cfg.search == "golden")
        out << "minimizer: " << format_double(res.minimizer) << "\n";
    out << "best bandwidth: " << bw_display(res.best) << "\n";
    out << "best score: " << format_double(res.score) << "\n";
    if (!cfg.out_path.empty()) {
        write_trace_csv(res, cfg.out_path);
        out << "trace: " << cfg.out_path << "\n";
    }
    return 0;
}

void write_gwr_output(const RunConfig& cfg, const IngestData& data,
                      const GwrResult& fit) {
    const auto& t = data.table;
    const std::size_t n = t.size();
    const bool geojson_out = data.from_geojson &&
                             cfg.out_path.size() > 8 &&
                             cfg.out_path.substr(cfg.out_path.size() - 8) == ".geojson";
    std::vector<std::string> coef_names{"Intercept"};
    for (const auto& p : fit.formula.predictors) coef_names.push_back(p);

    if (geojson_out) {
        nlohmann::ordered_json fc;
        fc["type"] = "FeatureCollection";
        fc["features"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            nlohmann::ordered_json f = data.features[i];
            auto& props = f["properties"];
            for (std::size_t c = 0; c < coef_names.size(); ++c)
                props[coef_names[c]] = fit.coef(i, c);
            props["fitted"] = fit.fitted[i];
            props["residual"] = fit.residuals[i];
            fc["features"].push_back(std::move(f));
        }
        write_file_atomic(cfg.out_path, fc.dump());
        return;
    }

    std::ostringstream out;
    out << "id,x,y";
    for (const auto& c : coef_names) out << "," << csv_escape(c);
    out << ",fitted,residual\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << csv_escape(label_of(t, i)) << "," << format_double(t.x[i]) << ","
            << format_double(t.y[i]);
        for (std::size_t c = 0; c < coef_names.size(); ++c)
            out << "," << format_double(fit.coef(i, c));
        out << "," << format_double(fit.fitted[i]) << ","
            << format_double(fit.residuals[i]) << "\n";
    }
    write_file_atomic(cfg.out_path, out.str());
}

int run_gwr(const RunConfig& cfg, const IngestData& data, std::ostream& out) {
    check_bw_xor_search(cfg, true, true);
    if (cfg.out_path.empty()) throw config_error("gwr needs --out");
    const FormulaSpec formula = parse_formula(cfg.formula);
    const KernelSpec spec = kernel_spec_from(cfg);

    Bandwidth bw = spec.bandwidth(cfg.bw);
    if (!cfg.search.empty()) {
        const Criterion crit = criterion_from_string(cfg.criterion);
        const BandwidthObjective obj(data.table, formula, spec, crit, cfg.threads);
        for (const auto& w : obj.warnings()) out << "warning: " << w << "\n";
        const SearchResult res = run_search(cfg, obj);
        bw = res.best;
        if (bw.adaptive) bw.value = std::floor(bw.value);
        out << "searched bandwidth: " << bw_display(bw) << " (score "
            << format_double(res.score) << ")\n";
    }
    const GwrResult fit = gwr_fit(data.table, formula, spec, bw, cfg.threads);
    write_gwr_output(cfg, data, fit);
    out << "n: " << fit.fitted.n_elem << "\n";
    out << "bandwidth: " << bw_display(bw) << (bw.adaptive ? " (adaptive)" : " (fixed)")
        << "\n";
    out << "trace_S: " << format_double(fit.trace_S) << "\n";
    out << "aicc: " << format_double(fit.aicc) << "\n";
    out << "cv: " << format_double(fit.cv) << "\n";
    out << "coefficients: " << cfg.out_path << "\n";
    return 0;
}

int run_gwss(const RunConfig& cfg, const IngestData& data, std::ostream& out) {
    check_bw_xor_search(cfg, true, false);
    if (cfg.out_path.empty()) throw config_error("gwss needs --out");
    if (cfg.variable.empty()) throw config_error("gwss needs --variable");
    const KernelSpec spec = kernel_spec_from(cfg);
    const Bandwidth bw = spec.bandwidth(cfg.bw);

    std::vector<StatKind> stats;
    for (const auto& name : split(cfg.stats, ','))
        stats.push_back(stat_kind_from_string(name));

    const auto surfaces =
        gw_summary(data.table, cfg.variable, spec, bw, stats, cfg.threads);

    const auto& t = data.table;
    const std::size_t n = t.size();
    const bool geojson_out = data.from_geojson &&
                             cfg.out_path.size() > 8 &&
                             cfg.out_path.substr(cfg.out_path.size() - 8) == ".geojson";
    const bool any_skew_flag = [&] {
        for (const auto& s : surfaces)
            if (s.stat == StatKind::skew) return true;
        return false;
    }();

    if (geojson_out) {
        nlohmann::ordered_json fc;
        fc["type"] = "FeatureCollection";
        fc["features"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < n; ++i) {
            nlohmann::ordered_json f = data.features[i];
            auto& props = f["properties"];
            for (const auto& s : surfaces)
                props[cfg.variable + "_" + to_string(s.stat)] = s.values[i];
            if (any_skew_flag)
                for (const auto& s : surfaces)
                    if (s.stat == StatKind::skew)
                        props[cfg.variable + "_skew_zeroed"] = int(s.degenerate[i]);
            fc["features"].push_back(std::move(f));
        }
        write_file_atomic(cfg.out_path, fc.dump());
    } else {
        std::ostringstream os;
        os << "id,x,y";
        for (const auto& s : surfaces) os << "," << cfg.variable << "_" << to_string(s.stat);
        if (any_skew_flag) os << "," << cfg.variable << "_skew_zeroed";
        os << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << csv_escape(label_of(t, i)) << "," << format_double(t.x[i]) << ","
               << format_double(t.y[i]);
            for (const auto& s : surfaces) os << "," << format_double(s.values[i]);
            if (any_skew_flag)
                for (const auto& s : surfaces)
                    if (s.stat == StatKind::skew) os << "," << int(s.degenerate[i]);
            os << "\n";
        }
        write_file_atomic(cfg.out_path, os.str());
    }
    out << "n: " << n << "\n";
    out << "variable: " << cfg.variable << "\n";
    out << "surfaces: " << cfg.out_path << "\n";
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
    if (cfg.data_path.empty()) throw config_error("need --data");
    IngestOptions opts;
    opts.format = cfg.format;
    opts.x_col = cfg.x_col;
    opts.y_col = cfg.y_col;
    const IngestData data = ingest(cfg.data_path, opts);

    if (cfg.subcommand == "bw") return run_bw(cfg, data, out);
    if (cfg.subcommand == "gwr") return run_gwr(cfg, data, out);
    if (cfg.subcommand == "gwss") return run_gwss(cfg, data, out);
    throw config_error("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace gwkit
