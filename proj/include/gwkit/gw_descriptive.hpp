#pragma once

#include <armadillo>
#include <string>
#include <vector>

#include "gwkit/gw_core.hpp"

namespace gwkit {

enum class StatKind { mean, stddev, skew, median };

StatKind stat_kind_from_string(const std::string& name);
std::string to_string(StatKind s);

/// One geographically weighted summary statistic, one value per location.
/// `degenerate` marks locations where skew was recorded as 0 because the
/// local standard deviation vanished.
struct SummarySurface {
    StatKind stat = StatKind::mean;
    std::string variable;
    KernelSpec spec;
    Bandwidth bandwidth;
    arma::vec values;
    std::vector<unsigned char> degenerate;
};

/// Weighted local moments at every location (weight-normalized population
/// forms, no small-sample correction):
///   mean   m = sum(w x) / sum(w)
///   std    s = sqrt(sum(w (x-m)^2) / sum(w))
///   skew   g = (sum(w (x-m)^3) / sum(w)) / s^3, 0 when s = 0
///   median smallest x whose cumulative ascending weight reaches half the total
std::vector<SummarySurface> gw_summary(const ObservationTable& table,
                                       const std::string& variable,
                                       const KernelSpec& spec, const Bandwidth& bw,
                                       const std::vector<StatKind>& stats,
                                       std::size_t threads = 1);

}  // namespace gwkit
