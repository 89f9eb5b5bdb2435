#include "gwkit/gw_descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gwkit/parallel.hpp"

namespace gwkit {

StatKind stat_kind_from_string(const std::string& name) {
    if (name == "mean") return StatKind::mean;
    if (name == "std") return StatKind::stddev;
    if (name == "skew") return StatKind::skew;
    if (name == "median") return StatKind::median;
    throw invalid_input("unknown statistic '" + name + "'");
}

std::string to_string(StatKind s) {
    switch (s) {
        case StatKind::mean: return "mean";
        case StatKind::stddev: return "std";
        case StatKind::skew: return "skew";
        case StatKind::median: return "median";
    }
    return "?";
}

namespace {

double weighted_median(const arma::vec& x, const arma::vec& w) {
    std::vector<arma::uword> pos;
    double total = 0.0;
    for (arma::uword j = 0; j < w.n_elem; ++j)
        if (w[j] > 0.0) {
            pos.push_back(j);
            total += w[j];
        }
    std::sort(pos.begin(), pos.end(), [&](arma::uword a, arma::uword b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return a < b;
    });
    double cum = 0.0;
    for (arma::uword j : pos) {
        cum += w[j];
        if (cum >= 0.5 * total) return x[j];
    }
    return x[pos.back()];
}

}  // namespace

std::vector<SummarySurface> gw_summary(const ObservationTable& table,
                                       const std::string& variable,
                                       const KernelSpec& spec, const Bandwidth& bw,
                                       const std::vector<StatKind>& stats,
                                       std::size_t threads) {
    table.validate();
    if (stats.empty()) throw invalid_input("no statistics requested");
    const arma::vec x(table.attribute(variable));
    const std::size_t n = table.size();
    const DistanceMatrix dist = build_distance_matrix(table, spec.metric, threads);

    std::vector<SummarySurface> out;
    for (StatKind s : stats) {
        SummarySurface surf;
        surf.stat = s;
        surf.variable = variable;
        surf.spec = spec;
        surf.bandwidth = bw;
        surf.values.set_size(n);
        surf.degenerate.assign(n, 0);
        out.push_back(std::move(surf));
    }

    parallel_for(n, threads == 0 ? 1 : threads, [&](std::size_t i) {
        const arma::vec w = weights_at(dist, i, spec, bw);
        const double sw = arma::accu(w);
        const double mean = arma::dot(w, x) / sw;
        const arma::vec dev = x - mean;
        const double var = arma::dot(w, dev % dev) / sw;
        const double sd = std::sqrt(var);
        for (auto& surf : out) {
            switch (surf.stat) {
                case StatKind::mean:
                    surf.values[i] = mean;
                    break;
                case StatKind::stddev:
                    surf.values[i] = sd;
                    break;
                case StatKind::skew:
                    if (sd == 0.0) {
                        surf.values[i] = 0.0;
                        surf.degenerate[i] = 1;
                    } else {
                        const double m3 = arma::dot(w, dev % dev % dev) / sw;
                        surf.values[i] = m3 / (sd * sd * sd);
                    }
                    break;
                case StatKind::median:
                    surf.values[i] = weighted_median(x, w);
                    break;
            }
        }
    });
    return out;
}

}  // namespace gwkit
