#include "gwkit/gw_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gwkit/parallel.hpp"

namespace gwkit {

KernelShape kernel_shape_from_string(const std::string& name) {
    if (name == "gaussian") return KernelShape::gaussian;
    if (name == "exponential") return KernelShape::exponential;
    if (name == "bisquare") return KernelShape::bisquare;
    if (name == "tricube") return KernelShape::tricube;
    if (name == "boxcar") return KernelShape::boxcar;
    throw invalid_input("unknown kernel shape '" + name + "'");
}

std::string to_string(KernelShape shape) {
    switch (shape) {
        case KernelShape::gaussian: return "gaussian";
        case KernelShape::exponential: return "exponential";
        case KernelShape::bisquare: return "bisquare";
        case KernelShape::tricube: return "tricube";
        case KernelShape::boxcar: return "boxcar";
    }
    return "?";
}

bool ObservationTable::has_attribute(const std::string& name) const {
    return std::find(attr_names.begin(), attr_names.end(), name) != attr_names.end();
}

const std::vector<double>& ObservationTable::attribute(const std::string& name) const {
    for (std::size_t c = 0; c < attr_names.size(); ++c)
        if (attr_names[c] == name) return attr_values[c];
    throw config_error("unknown attribute '" + name + "'");
}

void ObservationTable::validate() const {
    const std::size_t n = x.size();
    if (n == 0) throw invalid_input("observation table is empty");
    if (y.size() != n) throw invalid_input("coordinate columns differ in length");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw invalid_input("non-finite coordinate in row " + std::to_string(i + 1));
    if (attr_names.size() != attr_values.size())
        throw invalid_input("attribute name/value column mismatch");
    for (std::size_t c = 0; c < attr_names.size(); ++c) {
        if (attr_names[c].empty()) throw invalid_input("empty attribute name");
        if (attr_values[c].size() != n)
            throw invalid_input("attribute '" + attr_names[c] + "' has length " +
                                std::to_string(attr_values[c].size()) + ", expected " +
                                std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(attr_values[c][i]))
                throw invalid_input("non-finite value in '" + attr_names[c] +
                                    "' row " + std::to_string(i + 1));
        for (std::size_t c2 = c + 1; c2 < attr_names.size(); ++c2)
            if (attr_names[c] == attr_names[c2])
                throw invalid_input("duplicate attribute name '" + attr_names[c] + "'");
    }
    for (const auto& col : label_values)
        if (col.size() != n) throw invalid_input("label column has wrong length");
}

namespace {

double metric_distance(double dx, double dy, const MetricSpec& m) {
    if (m.kind == MetricSpec::Kind::euclidean || m.p == 2.0)
        return std::sqrt(dx * dx + dy * dy);
    const double ax = std::abs(dx), ay = std::abs(dy);
    if (m.p == 1.0) return ax + ay;
    return std::pow(std::pow(ax, m.p) + std::pow(ay, m.p), 1.0 / m.p);
}

}  // namespace

DistanceMatrix build_distance_matrix(const ObservationTable& table,
                                     const MetricSpec& metric, std::size_t threads) {
    table.validate();
    const std::size_t n = table.size();
    DistanceMatrix out;
    out.d.set_size(n, n);
    const double* xs = table.x.data();
    const double* ys = table.y.data();
    arma::mat& d = out.d;
    parallel_for(n, threads, [&](std::size_t i) {
        d(i, i) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = metric_distance(xs[i] - xs[j], ys[i] - ys[j], metric);
            d(i, j) = v;
            d(j, i) = v;
        }
    });
    return out;
}

NeighborSet nearby(const arma::vec& dist_row, const Bandwidth& bw) {
    const std::size_t n = dist_row.n_elem;
    std::vector<arma::uword> order(n);
    std::iota(order.begin(), order.end(), arma::uword(0));
    std::sort(order.begin(), order.end(), [&](arma::uword a, arma::uword b) {
        if (dist_row[a] != dist_row[b]) return dist_row[a] < dist_row[b];
        return a < b;
    });

    std::size_t take = 0;
    if (bw.adaptive) {
        const double kf = std::floor(bw.value);
        if (!(kf >= 1.0) || kf > static_cast<double>(n))
            throw invalid_bandwidth("adaptive bandwidth " + std::to_string(bw.value) +
                                    " outside [1, " + std::to_string(n) + "]");
        take = static_cast<std::size_t>(kf);
    } else {
        if (!(bw.value > 0.0))
            throw invalid_bandwidth("fixed bandwidth must be positive");
        while (take < n && dist_row[order[take]] <= bw.value) ++take;
    }

    NeighborSet set;
    set.indices.set_size(take);
    set.dists.set_size(take);
    for (std::size_t r = 0; r < take; ++r) {
        set.indices[r] = order[r];
        set.dists[r] = dist_row[order[r]];
    }
    return set;
}

arma::vec kernel_weights(KernelShape shape, const arma::vec& dists, double b_local) {
    arma::vec w(dists.n_elem);
    if (b_local <= 0.0) {
        if (shape == KernelShape::boxcar) {
            w.ones();
            return w;
        }
        throw degenerate_geometry("all neighbors coincide with the focal point");
    }
    for (arma::uword j = 0; j < dists.n_elem; ++j) {
        const double u = dists[j] / b_local;
        switch (shape) {
            case KernelShape::gaussian:
                w[j] = std::exp(-0.5 * u * u);
                break;
            case KernelShape::exponential:
                w[j] = std::exp(-u);
                break;
            case KernelShape::bisquare:
                w[j] = u < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
                break;
            case KernelShape::tricube: {
                const double t = 1.0 - u * u * u;
                w[j] = u < 1.0 ? t * t * t : 0.0;
                break;
            }
            case KernelShape::boxcar:
                w[j] = u <= 1.0 ? 1.0 : 0.0;
                break;
        }
    }
    return w;
}

arma::vec weights_at(const DistanceMatrix& dist, std::size_t focal,
                     const KernelSpec& spec, const Bandwidth& bw) {
    const std::size_t n = dist.size();
    if (focal >= n) throw invalid_input("focal index out of range");
    if (spec.adaptive != bw.adaptive)
        throw invalid_bandwidth("bandwidth mode does not match the kernel spec");

    const arma::vec row = dist.d.row(focal).t();
    const NeighborSet set = nearby(row, bw);
    const double b_local = bw.adaptive ? set.dists.max() : bw.value;
    const arma::vec wk = kernel_weights(spec.shape, set.dists, b_local);

    arma::vec w(n, arma::fill::zeros);
    for (arma::uword r = 0; r < set.indices.n_elem; ++r) w[set.indices[r]] = wk[r];
    return w;
}

}  // namespace gwkit
