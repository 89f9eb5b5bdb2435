#pragma once

#include <random>
#include <string>

#include "gwkit/gw_core.hpp"
#include "gwkit/gw_io.hpp"

namespace testutil {

inline gwkit::ObservationTable load_georgia() {
    static gwkit::ObservationTable table = [] {
        gwkit::IngestOptions opts;
        return gwkit::ingest(std::string(GWKIT_DATA_DIR) + "/georgia.csv", opts).table;
    }();
    return table;
}

inline gwkit::ObservationTable random_points(std::mt19937& rng, std::size_t n,
                                             double span = 100.0) {
    std::uniform_real_distribution<double> u(-span, span);
    gwkit::ObservationTable t;
    for (std::size_t i = 0; i < n; ++i) {
        t.x.push_back(u(rng));
        t.y.push_back(u(rng));
    }
    return t;
}

/// y = b0 + b1*p1 + ... + noise over random coordinates.
inline gwkit::ObservationTable random_regression_table(std::mt19937& rng,
                                                       std::size_t n, std::size_t preds,
                                                       double noise = 1.0) {
    auto t = random_points(rng, n);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::normal_distribution<double> g(0.0, noise);
    std::vector<std::vector<double>> cols(preds, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = 1.5;
        for (std::size_t c = 0; c < preds; ++c) {
            cols[c][i] = u(rng);
            v += (c + 1.0) * cols[c][i];
        }
        y[i] = v + g(rng);
    }
    for (std::size_t c = 0; c < preds; ++c) {
        t.attr_names.push_back("x" + std::to_string(c + 1));
        t.attr_values.push_back(std::move(cols[c]));
    }
    t.attr_names.push_back("y");
    t.attr_values.push_back(std::move(y));
    return t;
}

}  // namespace testutil
